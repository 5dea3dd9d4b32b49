//! Permutations and finite groups realized as enumerated sets of permutations.
//!
//! Products follow the "left to right" convention: `p * q` applies `p` first,
//! then `q`. This is the convention under which coset tables and right-regular
//! representations act homomorphically.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::numtheory::{factorize, lcm, prime_power_base};

/// Largest group the toolkit will enumerate.
pub const ORDER_CAP: usize = 10_000;

/// Multiplication tables are only materialized up to this order.
const TABLE_LIMIT: usize = 4_096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure exceeded {limit} elements")]
    LimitExceeded { limit: usize },
    #[error("generator of degree {found} does not match degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| GroupError::NotAPermutation(format!("image {i} out of range")))?;
            if *slot {
                return Err(GroupError::NotAPermutation(format!("image {i} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &from) in cycle.iter().enumerate() {
                let to = cycle[(k + 1) % cycle.len()];
                if from as usize >= degree || to as usize >= degree {
                    return Err(GroupError::NotAPermutation(format!(
                        "point {} outside degree {degree}",
                        from.max(to)
                    )));
                }
                images[from as usize] = to;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut order = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Copy acting on `offset..offset+degree` inside a set of `total` points.
    pub fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = j + offset as u32;
        }
        Permutation { images }
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.images[p] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A finite group with all of its elements enumerated.
///
/// Element 0 is always the identity. Elements are numbered in breadth-first
/// discovery order from the generators.
pub struct FiniteGroup {
    label: String,
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    order_of: Vec<u64>,
    inverse_of: Vec<usize>,
    generators: Vec<usize>,
    table: OnceLock<Option<Vec<u32>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order())
            .field("degree", &self.degree)
            .finish()
    }
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            label: self.label.clone(),
            degree: self.degree,
            elements: self.elements.clone(),
            index: self.index.clone(),
            order_of: self.order_of.clone(),
            inverse_of: self.inverse_of.clone(),
            generators: self.generators.clone(),
            table: OnceLock::new(),
        }
    }
}

impl FiniteGroup {
    /// Closes `generators` under composition, breadth first.
    ///
    /// `degree` is only consulted when `generators` is empty.
    pub fn generate(
        degree: usize,
        generators: &[Permutation],
        limit: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let degree = generators.first().map_or(degree, Permutation::degree);
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        let limit = limit.min(ORDER_CAP);

        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for g in generators {
                let next = elements[cur].then(g);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() == limit {
                    return Err(GroupError::LimitExceeded { limit });
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }

        let order_of = elements.iter().map(Permutation::order).collect();
        let inverse_of = elements.iter().map(|p| index[&p.inverse()]).collect();
        let generators = generators.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            label: String::new(),
            degree,
            elements,
            index,
            order_of,
            inverse_of,
            generators,
            table: OnceLock::new(),
        })
    }

    pub fn trivial() -> FiniteGroup {
        Self::generate(1, &[], 1).expect("trivial group always closes")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &Permutation {
        &self.elements[x]
    }

    /// Indices of the generators, in the order they were supplied.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.order_of[x]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.order_of
    }

    /// Element orders sorted ascending.
    pub fn order_multiset(&self) -> Vec<u64> {
        let mut v = self.order_of.clone();
        v.sort_unstable();
        v
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse_of[x]
    }

    fn cayley(&self) -> Option<&[u32]> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                (n <= TABLE_LIMIT).then(|| {
                    let mut t = Vec::with_capacity(n * n);
                    for a in &self.elements {
                        for b in &self.elements {
                            t.push(self.index[&a.then(b)] as u32);
                        }
                    }
                    t
                })
            })
            .as_deref()
    }

    /// Index of `x * y` (apply `x`, then `y`).
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match self.cayley() {
            Some(t) => t[x * self.order() + y] as usize,
            None => self.index[&self.elements[x].then(&self.elements[y])],
        }
    }

    pub fn pow(&self, x: usize, exp: i64) -> usize {
        let base = if exp < 0 { self.inverse(x) } else { x };
        let mut acc = 0;
        for _ in 0..exp.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    /// `C_G(x)` as ascending element indices.
    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect()
    }

    /// Conjugacy class of `x` as ascending element indices.
    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        for g in 0..self.order() {
            seen[self.conjugate(x, g)] = true;
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// `<x>` as ascending element indices.
    pub fn cyclic_subgroup(&self, x: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut cur = x;
        while cur != 0 {
            out.push(cur);
            cur = self.mul(cur, x);
        }
        out.sort_unstable();
        out
    }

    /// `Some(p)` when `|G|` is a positive power of the prime `p`.
    pub fn is_p_group(&self) -> Option<u64> {
        prime_power_base(self.order() as u64)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Distinct primes dividing `|G|`.
    pub fn prime_divisors(&self) -> Vec<u64> {
        factorize(self.order() as u64)
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// Whether the index set is closed under products and inverses.
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &s in subset {
            member[s] = true;
        }
        member[0]
            && subset
                .iter()
                .all(|&a| member[self.inverse(a)] && subset.iter().all(|&b| member[self.mul(a, b)]))
    }
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let total = a.degree() + b.degree();
    let gens: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|&g| a.element(g).shifted(0, total))
        .chain(
            b.generators()
                .iter()
                .map(|&g| b.element(g).shifted(a.degree(), total)),
        )
        .collect();
    let label = match (a.label(), b.label()) {
        ("", _) | (_, "") => String::new(),
        (x, y) => format!("{x} x {y}"),
    };
    Ok(FiniteGroup::generate(total, &gens, ORDER_CAP)?.with_label(label))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Permutation {
        let pts: Vec<u32> = (0..n as u32).collect();
        Permutation::from_cycles(n, &[&pts]).unwrap()
    }

    fn d12() -> FiniteGroup {
        let a = cycle(6);
        let b = Permutation::from_images((0..6u32).map(|i| (6 - i) % 6).collect()).unwrap();
        FiniteGroup::generate(6, &[a, b], ORDER_CAP).unwrap()
    }

    fn brute_order(p: &Permutation) -> u64 {
        let mut k = 1;
        let mut cur = p.clone();
        while !cur.is_identity() {
            cur = cur.then(p);
            k += 1;
        }
        k
    }

    #[test]
    fn permutation_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert!(Permutation::from_images(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.then(&q).apply(0), 2);
        assert_eq!(&p * &q, p.then(&q));
        assert_eq!(format!("{}", p.then(&q)), "(0 2 1)");
    }

    #[test]
    fn generate_examples() {
        let z6 = FiniteGroup::generate(6, &[cycle(6)], ORDER_CAP).unwrap();
        assert_eq!(z6.order(), 6);
        assert!(z6.element(0).is_identity());

        let trivial = FiniteGroup::generate(3, &[], ORDER_CAP).unwrap();
        assert_eq!(trivial.order(), 1);

        assert_eq!(d12().order(), 12);
    }

    #[test]
    fn generate_errors() {
        let err = FiniteGroup::generate(6, &[cycle(6), cycle(5)], ORDER_CAP).unwrap_err();
        assert_eq!(
            err,
            GroupError::DegreeMismatch {
                expected: 6,
                found: 5
            }
        );
        let err = FiniteGroup::generate(6, &[cycle(6)], 4).unwrap_err();
        assert_eq!(err, GroupError::LimitExceeded { limit: 4 });
    }

    #[test]
    fn element_orders() {
        let g = cycle(6);
        let z6 = FiniteGroup::generate(6, std::slice::from_ref(&g), ORDER_CAP).unwrap();
        let a = z6.index_of(&g).unwrap();
        assert_eq!(z6.element_order(0), 1);
        assert_eq!(z6.element_order(a), 6);
        assert_eq!(z6.element_order(z6.mul(a, a)), 3);
        for (i, p) in z6.elements().iter().enumerate() {
            assert_eq!(z6.element_order(i), brute_order(p));
        }
    }

    #[test]
    fn centralizer_and_class_in_d12() {
        let g = d12();
        let a = g.index_of(&cycle(6)).unwrap();
        // brute-force scan over the raw permutations
        let commuting: Vec<usize> = (0..12)
            .filter(|&i| g.element(i).then(g.element(a)) == g.element(a).then(g.element(i)))
            .collect();
        assert_eq!(commuting.len(), 6);
        assert_eq!(g.centralizer(a), commuting);
        assert_eq!(g.centralizer(a), g.cyclic_subgroup(a));

        let class = g.conjugacy_class(a);
        let mut expect = vec![a, g.inverse(a)];
        expect.sort_unstable();
        assert_eq!(class, expect);

        assert_eq!(g.centralizer(0).len(), 12);
        assert_eq!(g.conjugacy_class(0), vec![0]);
    }

    #[test]
    fn abelian_centralizers_are_everything() {
        let z6 = FiniteGroup::generate(6, &[cycle(6)], ORDER_CAP).unwrap();
        assert!(z6.is_abelian());
        for x in 0..6 {
            assert_eq!(z6.centralizer(x).len(), 6);
            assert_eq!(z6.conjugacy_class(x), vec![x]);
        }
    }

    #[test]
    fn cyclic_subgroups() {
        let z6 = FiniteGroup::generate(6, &[cycle(6)], ORDER_CAP).unwrap();
        let a = z6.generators()[0];
        assert_eq!(z6.cyclic_subgroup(0), vec![0]);
        assert_eq!(z6.cyclic_subgroup(a).len(), 6);
        let inv = (0..6).find(|&x| z6.element_order(x) == 2).unwrap();
        assert_eq!(z6.cyclic_subgroup(inv), vec![0, inv]);
    }

    #[test]
    fn p_group_detection() {
        let z8 = FiniteGroup::generate(8, &[cycle(8)], ORDER_CAP).unwrap();
        assert_eq!(z8.is_p_group(), Some(2));
        assert_eq!(d12().is_p_group(), None);
        let z3 = FiniteGroup::generate(3, &[cycle(3)], ORDER_CAP).unwrap();
        assert_eq!(z3.is_p_group(), Some(3));
        assert_eq!(FiniteGroup::trivial().is_p_group(), None);
    }

    #[test]
    fn direct_product_examples() {
        let z2 = FiniteGroup::generate(2, &[cycle(2)], ORDER_CAP).unwrap();
        let v4 = direct_product(&z2, &z2).unwrap();
        assert_eq!(v4.order_multiset(), vec![1, 2, 2, 2]);

        let s3 = FiniteGroup::generate(
            3,
            &[cycle(3), Permutation::from_cycles(3, &[&[0, 1]]).unwrap()],
            ORDER_CAP,
        )
        .unwrap();
        let z3 = FiniteGroup::generate(3, &[cycle(3)], ORDER_CAP).unwrap();
        let p = direct_product(&s3, &z3).unwrap();
        assert_eq!(p.order(), 18);
        assert!(p.element_orders().contains(&6));

        let same = direct_product(&s3, &FiniteGroup::trivial()).unwrap();
        assert_eq!(same.order_multiset(), s3.order_multiset());
    }

    #[test]
    fn class_equation_and_inverse_orders() {
        let g = d12();
        for x in 0..g.order() {
            assert_eq!(
                g.conjugacy_class(x).len() * g.centralizer(x).len(),
                g.order()
            );
            assert_eq!(g.element_order(x), g.element_order(g.inverse(x)));
            assert!(g.is_subgroup(&g.centralizer(x)));
            assert_eq!(g.order() as u64 % g.element_order(x), 0);
        }
    }

    #[test]
    fn mul_without_table_matches_table() {
        let g = d12();
        for x in 0..12 {
            for y in 0..12 {
                let direct = g.index_of(&g.element(x).then(g.element(y))).unwrap();
                assert_eq!(g.mul(x, y), direct);
            }
        }
    }
}
