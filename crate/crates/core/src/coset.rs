//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy with
//! coincidence processing), and realization of the enumerated action as a
//! permutation group.

use crate::perm::{FiniteGroup, Permutation, ORDER_CAP};
use crate::presentation::{Presentation, PresentationError};

pub const DEFAULT_MAX_COSETS: usize = 50_000;

const UNDEF: u32 = u32::MAX;

/// A complete coset table. Column `2i` is generator `i`, column `2i + 1` its
/// inverse. Coset 0 is the subgroup itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<u32>,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        self.rows.len() / self.cols()
    }

    fn cols(&self) -> usize {
        2 * self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators
    }

    /// Image of `coset` under generator `generator` (or its inverse).
    pub fn image(&self, coset: usize, generator: usize, inverse: bool) -> usize {
        self.rows[coset * self.cols() + 2 * generator + usize::from(inverse)] as usize
    }

    /// Right action of a generator on the cosets.
    pub fn action(&self, generator: usize) -> Permutation {
        let images = (0..self.num_cosets())
            .map(|c| self.image(c, generator, false) as u32)
            .collect();
        Permutation::from_images(images).expect("complete coset table column is a bijection")
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    queue: Vec<usize>,
}

impl Enumerator {
    fn new(generators: usize, max_cosets: usize) -> Self {
        let cols = 2 * generators;
        Enumerator {
            cols,
            table: vec![UNDEF; cols],
            parent: vec![0],
            live: 1,
            max_cosets,
            queue: Vec::new(),
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.cols + x] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), PresentationError> {
        if self.live >= self.max_cosets {
            return Err(PresentationError::TableOverflow {
                max_cosets: self.max_cosets,
            });
        }
        let new = self.rows();
        self.parent.push(new as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.live += 1;
        self.set(c, x, new as u32);
        self.set(new, x ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, mut c: usize) -> usize {
        while self.parent[c] as usize != c {
            let up = self.parent[c] as usize;
            self.parent[c] = self.parent[up];
            c = up;
        }
        c
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo as u32;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(dead, x);
                if d == UNDEF {
                    continue;
                }
                let d = d as usize;
                self.set(d, x ^ 1, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                let nu_xi = self.get(nu, x ^ 1);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x as usize);
                } else if nu_xi != UNDEF {
                    self.merge(mu, nu_xi as usize);
                } else {
                    self.set(mu, x, nu as u32);
                    self.set(nu, x ^ 1, mu as u32);
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, alpha: usize, word: &[usize]) -> Result<(), PresentationError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0isize;
        let mut j = word.len() as isize - 1;
        loop {
            while i <= j && self.get(f, word[i as usize]) != UNDEF {
                f = self.get(f, word[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i && self.get(b, word[j as usize] ^ 1) != UNDEF {
                b = self.get(b, word[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.set(f, x, b as u32);
                self.set(b, x ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }

    /// Drops dead rows, keeping live cosets in their original relative order.
    /// Returns the number of live rows before `keep`.
    fn compact(&mut self, keep: usize) -> usize {
        let mut new_index = vec![UNDEF; self.rows()];
        let mut next = 0u32;
        for (c, slot) in new_index.iter_mut().enumerate() {
            if self.is_live(c) {
                *slot = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..self.rows() {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.cols {
                let v = self.get(c, x);
                table.push(if v == UNDEF {
                    UNDEF
                } else {
                    let r = self.rep(v as usize);
                    new_index[r]
                });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        new_index[..keep].iter().filter(|&&i| i != UNDEF).count()
    }
}

/// Enumerates the cosets of the trivial subgroup of the presented group.
pub fn coset_enumerate(
    presentation: &Presentation,
    max_cosets: usize,
) -> Result<CosetTable, PresentationError> {
    let ngens = presentation.generators.len();
    let relators: Vec<Vec<usize>> = presentation
        .relators
        .iter()
        .map(|r| {
            r.letters()
                .iter()
                .flat_map(|s| {
                    let col = 2 * s.generator + usize::from(s.exponent < 0);
                    std::iter::repeat_n(col, s.exponent.unsigned_abs() as usize)
                })
                .collect()
        })
        .collect();

    let mut e = Enumerator::new(ngens, max_cosets.max(1));
    let mut alpha = 0;
    while alpha < e.rows() {
        if e.rows() > 4096 && e.rows() > 2 * e.live {
            alpha = e.compact(alpha);
            continue;
        }
        if e.is_live(alpha) {
            for r in &relators {
                e.scan_and_fill(alpha, r)?;
                if !e.is_live(alpha) {
                    break;
                }
            }
            if e.is_live(alpha) {
                for x in 0..e.cols {
                    if e.get(alpha, x) == UNDEF {
                        e.define(alpha, x)?;
                    }
                }
            }
        }
        alpha += 1;
    }
    e.compact(0);
    debug_assert!(e.table.iter().all(|&v| v != UNDEF));
    Ok(CosetTable {
        generators: ngens,
        rows: e.table,
    })
}

/// Realizes the presented group through its regular action on cosets.
pub fn realize(
    presentation: &Presentation,
    max_cosets: usize,
) -> Result<FiniteGroup, PresentationError> {
    let table = coset_enumerate(presentation, max_cosets)?;
    let n = table.num_cosets();
    let gens: Vec<Permutation> = (0..table.num_generators())
        .map(|g| table.action(g))
        .collect();
    let group = FiniteGroup::generate(n, &gens, ORDER_CAP.max(n))?;
    debug_assert_eq!(group.order(), n);
    Ok(group.with_label(presentation.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn order_of(text: &str) -> usize {
        coset_enumerate(&parse_presentation(text).unwrap(), DEFAULT_MAX_COSETS)
            .unwrap()
            .num_cosets()
    }

    #[test]
    fn cyclic_five() {
        assert_eq!(order_of("< a | a^5 = e >"), 5);
    }

    #[test]
    fn metacyclic_forty() {
        assert_eq!(order_of("< a,b | a^5 = b^8 = e, b a b^-1 = a^2 >"), 40);
    }

    #[test]
    fn small_families() {
        assert_eq!(order_of("< a | a^1 = e >"), 1);
        assert_eq!(order_of("< a, b | a^4, b^2, (ab)^2 >"), 8);
        assert_eq!(
            order_of("< a, b | a^6 = e, b^2 = a^3, b a b^-1 = a^-1 >"),
            12
        );
        assert_eq!(order_of("< a, b | a^2, b^3, (ab)^5 >"), 60);
        assert_eq!(order_of("< a, b | a^2, b^3, (ab)^4 >"), 24);
        assert_eq!(order_of("< a, b | a, b^7 >"), 7);
        // a = e forces b = b^2, so b = e as well
        assert_eq!(order_of("< a, b | a, b^7, a b a^-1 b^-2 >"), 1);
    }

    #[test]
    fn overflow_on_infinite_group() {
        let p = parse_presentation("< a, b | a b a^-1 b^-1 >").unwrap();
        assert_eq!(
            coset_enumerate(&p, 500).unwrap_err(),
            PresentationError::TableOverflow { max_cosets: 500 }
        );
    }

    #[test]
    fn table_is_consistent() {
        let p = parse_presentation("< a, b | a^3 = b^8 = e, b a b^-1 = a^-1 >").unwrap();
        let t = coset_enumerate(&p, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.num_cosets(), 24);
        for c in 0..t.num_cosets() {
            for g in 0..2 {
                let d = t.image(c, g, false);
                assert_eq!(t.image(d, g, true), c);
            }
        }
    }

    #[test]
    fn realized_group_satisfies_relators() {
        let p = parse_presentation("< a,b | a^9=b^2=e, (a^-1 b)^2 = b a^-2 >").unwrap();
        let g = realize(&p, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(g.order(), 36);
        let gens = g.generators().to_vec();
        for r in &p.relators {
            assert_eq!(r.evaluate(&g, &gens), 0);
        }
    }
}
