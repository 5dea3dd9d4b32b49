//! Group construction expressions.
//!
//! ```text
//! expr  := term (('x' | '×') term)*
//! term  := '(' expr ')'
//!        | Cyclic(n) | Dihedral(2k) | Dicyclic(4k) | Symmetric(n) | Alternating(n)
//!        | Affine(1, q) | DirectProduct(expr, expr)
//!        | Semidirect(expr, expr, {w, ...}, ...)
//!        | Presented("<presentation>")
//! ```
//!
//! In `Semidirect(N, H, {..}, {..})` there is one brace group per generator of
//! `H`; it lists the images of the generators of `N` under conjugation by that
//! generator, as words over the letters `a, b, c, d, f, g, ...` (`e` is the
//! identity and is skipped).

use std::fmt;

use crate::coset::{realize, DEFAULT_MAX_COSETS};
use crate::perm::{direct_product, FiniteGroup, Permutation, ORDER_CAP};
use crate::presentation::{parse_presentation, parse_word, GroupWord, Presentation};

use super::{families, ConstructionError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Dihedral(u64),
    Dicyclic(u64),
    Symmetric(u64),
    Alternating(u64),
    /// `GA(1, q)`.
    Affine(u64),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<GroupWord>>,
    },
    Presented(Presentation),
}

/// Letters naming the generators of the normal factor in action descriptors.
pub fn action_letters(count: usize) -> Vec<String> {
    ('a'..='z')
        .filter(|&c| c != 'e')
        .take(count)
        .map(String::from)
        .collect()
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec, ConstructionError> {
        let mut p = SpecParser { src: text, pos: 0 };
        let spec = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(spec)
    }

    /// Short conventional name (`Z6`, `D12`, `S3 x Z3`, ...).
    pub fn short_name(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("Z{n}"),
            GroupSpec::Dihedral(n) => format!("D{n}"),
            GroupSpec::Dicyclic(n) => format!("Dic{n}"),
            GroupSpec::Symmetric(n) => format!("S{n}"),
            GroupSpec::Alternating(n) => format!("A{n}"),
            GroupSpec::Affine(q) => format!("GA(1,{q})"),
            GroupSpec::DirectProduct(a, b) => format!("{} x {}", a.factor_name(), b.factor_name()),
            GroupSpec::Semidirect { normal, acting, .. } => {
                format!("{} : {}", normal.factor_name(), acting.factor_name())
            }
            GroupSpec::Presented(p) => p.to_string(),
        }
    }

    fn factor_name(&self) -> String {
        match self {
            GroupSpec::DirectProduct(..) | GroupSpec::Semidirect { .. } => {
                format!("({})", self.short_name())
            }
            _ => self.short_name(),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, ConstructionError> {
        let group = match self {
            GroupSpec::Cyclic(n) => families::cyclic(*n)?,
            GroupSpec::Dihedral(n) => families::dihedral(*n)?,
            GroupSpec::Dicyclic(n) => families::dicyclic(*n)?,
            GroupSpec::Symmetric(n) => families::symmetric(*n)?,
            GroupSpec::Alternating(n) => families::alternating(*n)?,
            GroupSpec::Affine(q) => families::affine(*q)?,
            GroupSpec::DirectProduct(a, b) => {
                let (a, b) = (a.build()?, b.build()?);
                if a.order() * b.order() > ORDER_CAP {
                    return Err(crate::perm::GroupError::LimitExceeded { limit: ORDER_CAP }.into());
                }
                direct_product(&a, &b)?
            }
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
            } => semidirect_product(&normal.build()?, &acting.build()?, action)?,
            GroupSpec::Presented(p) => realize(p, DEFAULT_MAX_COSETS)?,
        };
        Ok(group.with_label(self.short_name()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "Dihedral({n})"),
            GroupSpec::Dicyclic(n) => write!(f, "Dicyclic({n})"),
            GroupSpec::Symmetric(n) => write!(f, "Symmetric({n})"),
            GroupSpec::Alternating(n) => write!(f, "Alternating({n})"),
            GroupSpec::Affine(q) => write!(f, "Affine(1, {q})"),
            GroupSpec::DirectProduct(a, b) => {
                let wrap = |s: &GroupSpec| matches!(s, GroupSpec::DirectProduct(..));
                if wrap(b) {
                    write!(f, "{a} x ({b})")
                } else {
                    write!(f, "{a} x {b}")
                }
            }
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
            } => {
                write!(f, "Semidirect({normal}, {acting}")?;
                let width = action
                    .iter()
                    .flatten()
                    .filter_map(GroupWord::max_generator)
                    .max()
                    .map_or(0, |m| m + 1);
                let letters = action_letters(width);
                for images in action {
                    let words: Vec<String> = images
                        .iter()
                        .map(|w| w.display(&letters).to_string())
                        .collect();
                    write!(f, ", {{{}}}", words.join(", "))?;
                }
                write!(f, ")")
            }
            GroupSpec::Presented(p) => write!(f, "Presented(\"{p}\")"),
        }
    }
}

/// `N ⋊ H`, where `action[j]` lists the images of `N`'s generators under the
/// automorphism attached to `H`'s generator `j`.
///
/// Realized through the right-regular action on pairs `(n, h)` with
/// `(n, h)(n', h') = (n φ_h(n'), h h')`.
pub fn semidirect_product(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    action: &[Vec<GroupWord>],
) -> Result<FiniteGroup, ConstructionError> {
    let n_gens = normal.generators();
    let h_gens = acting.generators();
    if action.len() != h_gens.len() {
        return Err(ConstructionError::InvalidParameter(format!(
            "action lists {} automorphisms but the acting group has {} generators",
            action.len(),
            h_gens.len()
        )));
    }
    if normal.order() * acting.order() > ORDER_CAP {
        return Err(crate::perm::GroupError::LimitExceeded { limit: ORDER_CAP }.into());
    }

    let mut autos: Vec<Vec<usize>> = Vec::with_capacity(action.len());
    for (j, images) in action.iter().enumerate() {
        if images.len() != n_gens.len() {
            return Err(ConstructionError::InvalidParameter(format!(
                "automorphism {j} gives {} images for {} generators",
                images.len(),
                n_gens.len()
            )));
        }
        if images
            .iter()
            .filter_map(GroupWord::max_generator)
            .any(|m| m >= n_gens.len())
        {
            return Err(ConstructionError::InvalidParameter(format!(
                "automorphism {j} uses a letter beyond the {} generators of the normal factor",
                n_gens.len()
            )));
        }
        let targets: Vec<usize> = images.iter().map(|w| w.evaluate(normal, n_gens)).collect();
        autos.push(extend_to_automorphism(normal, &targets).map_err(|why| {
            ConstructionError::NotAnAutomorphism(format!("automorphism {j}: {why}"))
        })?);
    }

    // φ_h for every h, checking that the generator assignment is a homomorphism
    // H -> Aut(N).
    let (n_ord, h_ord) = (normal.order(), acting.order());
    let mut phi: Vec<Option<Vec<usize>>> = vec![None; h_ord];
    phi[0] = Some((0..n_ord).collect());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(h) = queue.pop_front() {
        for (j, &t) in h_gens.iter().enumerate() {
            let next = acting.mul(h, t);
            let cur = phi[h].as_ref().expect("visited");
            let composed: Vec<usize> = (0..n_ord).map(|x| cur[autos[j][x]]).collect();
            match &phi[next] {
                Some(existing) if *existing != composed => {
                    return Err(ConstructionError::NotAnAutomorphism(
                        "the assignment does not define an action of the acting group".into(),
                    ))
                }
                Some(_) => {}
                None => {
                    phi[next] = Some(composed);
                    queue.push_back(next);
                }
            }
        }
    }
    let phi: Vec<Vec<usize>> = phi
        .into_iter()
        .map(|p| p.expect("H is generated"))
        .collect();

    let point = |n: usize, h: usize| (n * h_ord + h) as u32;
    let mut gens = Vec::with_capacity(n_gens.len() + h_gens.len());
    for &n0 in n_gens {
        let mut images = vec![0u32; n_ord * h_ord];
        for n in 0..n_ord {
            for h in 0..h_ord {
                images[point(n, h) as usize] = point(normal.mul(n, phi[h][n0]), h);
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    for &t in h_gens {
        let mut images = vec![0u32; n_ord * h_ord];
        for n in 0..n_ord {
            for h in 0..h_ord {
                images[point(n, h) as usize] = point(n, acting.mul(h, t));
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    Ok(FiniteGroup::generate(n_ord * h_ord, &gens, ORDER_CAP)?)
}

/// Extends generator images to a map on all of `group`, checking it is a
/// bijective homomorphism.
fn extend_to_automorphism(group: &FiniteGroup, targets: &[usize]) -> Result<Vec<usize>, String> {
    let gens = group.generators();
    let mut map: Vec<Option<usize>> = vec![None; group.order()];
    map[0] = Some(0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("visited");
        for (k, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            let fy = group.mul(fx, targets[k]);
            match map[y] {
                Some(prev) if prev != fy => {
                    return Err("images do not respect the relations".into())
                }
                Some(_) => {}
                None => {
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    let map: Vec<usize> = map.into_iter().map(|m| m.expect("generated")).collect();
    let mut hit = vec![false; map.len()];
    for &m in &map {
        if std::mem::replace(&mut hit[m], true) {
            return Err("map is not injective".into());
        }
    }
    Ok(map)
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn error(&self, message: impl Into<String>) -> ConstructionError {
        ConstructionError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ConstructionError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Option<&str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 || !self.rest().starts_with(|c: char| c.is_alphabetic()) {
            return None;
        }
        let start = self.pos;
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    fn peek_product_op(&mut self) -> bool {
        self.skip_ws();
        let r = self.rest();
        if r.starts_with('×') {
            return true;
        }
        r.starts_with('x') && !r[1..].starts_with(|c: char| c.is_alphanumeric() || c == '_')
    }

    fn number(&mut self) -> Result<u64, ConstructionError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let v = self.rest()[..len]
            .parse()
            .map_err(|_| self.error("number out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn expr(&mut self) -> Result<GroupSpec, ConstructionError> {
        let mut left = self.term()?;
        while self.peek_product_op() {
            self.pos += if self.rest().starts_with('×') {
                '×'.len_utf8()
            } else {
                1
            };
            let right = self.term()?;
            left = GroupSpec::DirectProduct(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<GroupSpec, ConstructionError> {
        if self.eat('(') {
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(inner);
        }
        let at = self.pos;
        let name = match self.ident() {
            Some(name) => name.to_string(),
            None => return Err(self.error("expected a group constructor")),
        };
        self.expect('(')?;
        let spec = match name.as_str() {
            "Cyclic" => GroupSpec::Cyclic(self.number()?),
            "Dihedral" => GroupSpec::Dihedral(self.number()?),
            "Dicyclic" => GroupSpec::Dicyclic(self.number()?),
            "Symmetric" => GroupSpec::Symmetric(self.number()?),
            "Alternating" => GroupSpec::Alternating(self.number()?),
            "Affine" => {
                let d = self.number()?;
                if d != 1 {
                    return Err(self.error("only Affine(1, q) is supported"));
                }
                self.expect(',')?;
                GroupSpec::Affine(self.number()?)
            }
            "DirectProduct" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                GroupSpec::DirectProduct(Box::new(a), Box::new(b))
            }
            "Semidirect" | "SemidirectProduct" => {
                let normal = self.expr()?;
                self.expect(',')?;
                let acting = self.expr()?;
                let mut action = Vec::new();
                while self.eat(',') {
                    action.push(self.action_images()?);
                }
                GroupSpec::Semidirect {
                    normal: Box::new(normal),
                    acting: Box::new(acting),
                    action,
                }
            }
            "Presented" => {
                self.skip_ws();
                let text = self.string_literal()?;
                let start = self.pos - text.len() - 1;
                let p = parse_presentation(&text).map_err(|e| ConstructionError::Parse {
                    position: start,
                    message: e.to_string(),
                })?;
                GroupSpec::Presented(p)
            }
            other => {
                self.pos = at;
                return Err(self.error(format!("unknown constructor '{other}'")));
            }
        };
        self.expect(')')?;
        Ok(spec)
    }

    fn string_literal(&mut self) -> Result<String, ConstructionError> {
        if !self.rest().starts_with('"') {
            return Err(self.error("expected a quoted presentation"));
        }
        let body = &self.rest()[1..];
        let end = body
            .find('"')
            .ok_or_else(|| self.error("unterminated string"))?;
        let text = body[..end].to_string();
        self.pos += end + 2;
        Ok(text)
    }

    fn action_images(&mut self) -> Result<Vec<GroupWord>, ConstructionError> {
        self.expect('{')?;
        let start = self.pos;
        let body_len = self
            .rest()
            .find('}')
            .ok_or_else(|| self.error("unterminated '{'"))?;
        let body = &self.src[start..start + body_len];
        let letters = action_letters(25);
        let mut words = Vec::new();
        let mut offset = start;
        for piece in body.split(',') {
            let w = parse_word(piece, &letters).map_err(|e| ConstructionError::Parse {
                position: offset,
                message: e.to_string(),
            })?;
            words.push(w);
            offset += piece.len() + 1;
        }
        self.pos = start + body_len + 1;
        Ok(words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::lcm;

    fn build(text: &str) -> FiniteGroup {
        GroupSpec::parse(text).unwrap().build().unwrap()
    }

    fn center_size(g: &FiniteGroup) -> usize {
        (0..g.order())
            .filter(|&x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x)))
            .count()
    }

    #[test]
    fn parse_and_display() {
        for text in [
            "Cyclic(6)",
            "Dihedral(12) x Cyclic(2)",
            "Cyclic(2) x (Cyclic(2) x Cyclic(2))",
            "Affine(1, 5) x Cyclic(2)",
            "Semidirect(Cyclic(5), Cyclic(4), {a^2})",
            "Semidirect(Cyclic(3) x Cyclic(3), Cyclic(2), {a^-1, b^-1})",
            "Presented(\"< a, b | a^5, b^8, b a b^-1 a^-2 >\")",
        ] {
            let spec = GroupSpec::parse(text).unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(GroupSpec::parse(&spec.to_string()).unwrap(), spec);
        }
        assert_eq!(
            GroupSpec::parse("DirectProduct(Cyclic(2), Cyclic(3))").unwrap(),
            GroupSpec::parse("Cyclic(2) × Cyclic(3)").unwrap()
        );
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "Cyclic(",
            "Cyclic(6) x",
            "Bogus(3)",
            "Affine(2, 5)",
            "Presented(\"< a | a^2 = >\")",
            "Presented(< a | a >)",
            "Cyclic(6) Cyclic(2)",
            "Semidirect(Cyclic(5), Cyclic(4), {a^})",
        ] {
            assert!(
                matches!(GroupSpec::parse(bad), Err(ConstructionError::Parse { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn build_examples() {
        assert_eq!(build("Cyclic(6)").order_multiset(), vec![1, 2, 3, 3, 6, 6]);
        let dic = build("Dicyclic(12)");
        assert_eq!(dic.order(), 12);
        assert!(dic.element_orders().contains(&6));
        assert_eq!(build("Affine(1, 5)").order(), 20);
        assert_eq!(build("Presented(\"< a | a^5 = e >\")").order(), 5);
    }

    #[test]
    fn direct_product_orders_are_lcms() {
        for (a, b) in [
            ("Cyclic(4)", "Cyclic(6)"),
            ("Symmetric(3)", "Cyclic(4)"),
            ("Dicyclic(8)", "Cyclic(3)"),
        ] {
            let (ga, gb) = (build(a), build(b));
            let mut expect: Vec<u64> = ga
                .element_orders()
                .iter()
                .flat_map(|&x| gb.element_orders().iter().map(move |&y| lcm(x, y)))
                .collect();
            expect.sort_unstable();
            assert_eq!(build(&format!("{a} x {b}")).order_multiset(), expect);
        }
    }

    #[test]
    fn semidirect_trivial_action_is_direct() {
        let sd = build("Semidirect(Cyclic(3), Cyclic(4), {a})");
        assert_eq!(
            sd.order_multiset(),
            build("Cyclic(3) x Cyclic(4)").order_multiset()
        );
        assert!(sd.is_abelian());
    }

    #[test]
    fn frobenius_twenty() {
        let g = build("Semidirect(Cyclic(5), Cyclic(4), {a^2})");
        assert_eq!(g.order(), 20);
        assert_eq!(center_size(&g), 1);
        assert_eq!(g.order_multiset(), build("Affine(1, 5)").order_multiset());
    }

    #[test]
    fn inversion_gives_s3() {
        let g = build("Semidirect(Cyclic(3), Cyclic(2), {a^-1})");
        assert_eq!(g.order_multiset(), build("Symmetric(3)").order_multiset());
    }

    #[test]
    fn bad_actions_rejected() {
        // a -> a^2 is not injective on Z4
        let err = GroupSpec::parse("Semidirect(Cyclic(4), Cyclic(2), {a^2})")
            .unwrap()
            .build();
        assert!(
            matches!(err, Err(ConstructionError::NotAnAutomorphism(_))),
            "{err:?}"
        );
        // a -> a^2 has order 4 on Z5, which Z2 cannot realize
        let err = GroupSpec::parse("Semidirect(Cyclic(5), Cyclic(2), {a^2})")
            .unwrap()
            .build();
        assert!(
            matches!(err, Err(ConstructionError::NotAnAutomorphism(_))),
            "{err:?}"
        );
        // swapping generators of Z2 x Z4 is not a homomorphism
        let err = GroupSpec::parse("Semidirect(Cyclic(2) x Cyclic(4), Cyclic(2), {b, a})")
            .unwrap()
            .build();
        assert!(
            matches!(err, Err(ConstructionError::NotAnAutomorphism(_))),
            "{err:?}"
        );
        // wrong arity
        let err = GroupSpec::parse("Semidirect(Cyclic(5), Cyclic(2), {a, a})")
            .unwrap()
            .build();
        assert!(
            matches!(err, Err(ConstructionError::InvalidParameter(_))),
            "{err:?}"
        );
        let err = GroupSpec::parse("Semidirect(Cyclic(5), Cyclic(2))")
            .unwrap()
            .build();
        assert!(
            matches!(err, Err(ConstructionError::InvalidParameter(_))),
            "{err:?}"
        );
    }

    #[test]
    fn product_respects_cap() {
        let err = GroupSpec::parse("Symmetric(7) x Symmetric(3)")
            .unwrap()
            .build();
        assert!(matches!(err, Err(ConstructionError::Group(_))), "{err:?}");
    }
}
