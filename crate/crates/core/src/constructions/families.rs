//! Permutation realizations of the named families.

use crate::numtheory::{factorize, is_prime};
use crate::perm::{FiniteGroup, Permutation, ORDER_CAP};

use super::ConstructionError;

fn invalid(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidParameter(msg.into())
}

fn n_cycle(n: usize, offset: usize, len: usize) -> Permutation {
    let pts: Vec<u32> = (offset as u32..(offset + len) as u32).collect();
    Permutation::from_cycles(n, &[&pts]).expect("cycle inside range")
}

pub fn cyclic(n: u64) -> Result<FiniteGroup, ConstructionError> {
    if n == 0 {
        return Err(invalid("Cyclic(n) needs n >= 1"));
    }
    let n = n as usize;
    let gens = if n == 1 {
        vec![]
    } else {
        vec![n_cycle(n, 0, n)]
    };
    Ok(FiniteGroup::generate(n, &gens, ORDER_CAP)?.with_label(format!("Z{n}")))
}

/// Dihedral group of order `order` (symmetries of a regular `order/2`-gon).
pub fn dihedral(order: u64) -> Result<FiniteGroup, ConstructionError> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(invalid(format!(
            "Dihedral({order}) needs an even order >= 4"
        )));
    }
    let k = (order / 2) as usize;
    let gens = if k == 2 {
        // the 2-gon action is not faithful; use the Klein four-group on 4 points
        vec![
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?,
            Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])?,
        ]
    } else {
        let reflection = (0..k as u32).map(|i| (k as u32 - i) % k as u32).collect();
        vec![n_cycle(k, 0, k), Permutation::from_images(reflection)?]
    };
    Ok(FiniteGroup::generate(gens[0].degree(), &gens, ORDER_CAP)?.with_label(format!("D{order}")))
}

/// Dicyclic group of order `order = 4k`, via its right-regular action on the
/// normal forms `a^i b^j` (`0 <= i < 2k`, `j in {0, 1}`) with `b^2 = a^k` and
/// `b a = a^-1 b`.
pub fn dicyclic(order: u64) -> Result<FiniteGroup, ConstructionError> {
    if order < 8 || !order.is_multiple_of(4) {
        return Err(invalid(format!(
            "Dicyclic({order}) needs order 4k with k >= 2"
        )));
    }
    let k = (order / 4) as usize;
    let m = 2 * k;
    let point = |i: usize, j: usize| (2 * i + j) as u32;
    let mut by_a = vec![0u32; 2 * m];
    let mut by_b = vec![0u32; 2 * m];
    for i in 0..m {
        by_a[point(i, 0) as usize] = point((i + 1) % m, 0);
        by_a[point(i, 1) as usize] = point((i + m - 1) % m, 1);
        by_b[point(i, 0) as usize] = point(i, 1);
        by_b[point(i, 1) as usize] = point((i + k) % m, 0);
    }
    let gens = [
        Permutation::from_images(by_a)?,
        Permutation::from_images(by_b)?,
    ];
    Ok(FiniteGroup::generate(2 * m, &gens, ORDER_CAP)?.with_label(format!("Dic{order}")))
}

pub fn symmetric(n: u64) -> Result<FiniteGroup, ConstructionError> {
    if n == 0 {
        return Err(invalid("Symmetric(n) needs n >= 1"));
    }
    let n = n as usize;
    let gens = if n == 1 {
        vec![]
    } else {
        vec![n_cycle(n, 0, n), Permutation::from_cycles(n, &[&[0, 1]])?]
    };
    Ok(FiniteGroup::generate(n, &gens, ORDER_CAP)?.with_label(format!("S{n}")))
}

pub fn alternating(n: u64) -> Result<FiniteGroup, ConstructionError> {
    if n == 0 {
        return Err(invalid("Alternating(n) needs n >= 1"));
    }
    let n = n as usize;
    let gens = match n {
        1 | 2 => vec![],
        3 => vec![n_cycle(3, 0, 3)],
        _ if n % 2 == 1 => vec![n_cycle(n, 0, 3), n_cycle(n, 0, n)],
        _ => vec![n_cycle(n, 0, 3), n_cycle(n, 1, n - 1)],
    };
    Ok(FiniteGroup::generate(n, &gens, ORDER_CAP)?.with_label(format!("A{n}")))
}

/// `GA(1, q)` for prime `q`: the maps `x -> a x + b` over `Z/q`.
pub fn affine(q: u64) -> Result<FiniteGroup, ConstructionError> {
    if !is_prime(q) {
        return Err(invalid(format!(
            "Affine(1, {q}) is only supported for prime q"
        )));
    }
    let g = primitive_root(q);
    let translate = (0..q).map(|x| ((x + 1) % q) as u32).collect();
    let scale = (0..q).map(|x| (x * g % q) as u32).collect();
    let gens = [
        Permutation::from_images(translate)?,
        Permutation::from_images(scale)?,
    ];
    Ok(FiniteGroup::generate(q as usize, &gens, ORDER_CAP)?.with_label(format!("GA(1,{q})")))
}

fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let primes: Vec<u64> = factorize(q - 1).into_iter().map(|(p, _)| p).collect();
    (2..q)
        .find(|&g| primes.iter().all(|&p| mod_pow(g, (q - 1) / p, q) != 1))
        .expect("every prime has a primitive root")
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::direct_product;

    fn count_of_order(g: &FiniteGroup, k: u64) -> usize {
        g.element_orders().iter().filter(|&&o| o == k).count()
    }

    #[test]
    fn family_orders() {
        for n in 1..=12 {
            assert_eq!(cyclic(n).unwrap().order() as u64, n);
        }
        for k in 2..=12 {
            assert_eq!(dihedral(2 * k).unwrap().order() as u64, 2 * k);
        }
        for k in 2..=11 {
            assert_eq!(dicyclic(4 * k).unwrap().order() as u64, 4 * k);
        }
        let fact = [1, 1, 2, 6, 24, 120, 720];
        for n in 1..=6u64 {
            assert_eq!(symmetric(n).unwrap().order(), fact[n as usize]);
            assert_eq!(
                alternating(n).unwrap().order(),
                fact[n as usize].div_ceil(2).max(1)
            );
        }
        for q in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(affine(q).unwrap().order() as u64, q * (q - 1));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(cyclic(0).is_err());
        assert!(dihedral(6).is_ok());
        assert!(dihedral(7).is_err());
        assert!(dihedral(2).is_err());
        assert!(dicyclic(4).is_err());
        assert!(dicyclic(10).is_err());
        assert!(affine(4).is_err());
        assert!(matches!(symmetric(8), Err(ConstructionError::Group(_))));
    }

    #[test]
    fn cyclic_six_orders() {
        assert_eq!(cyclic(6).unwrap().order_multiset(), vec![1, 2, 3, 3, 6, 6]);
    }

    #[test]
    fn dicyclic_twelve_has_order_six_elements() {
        let g = dicyclic(12).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(count_of_order(&g, 6), 2);
    }

    #[test]
    fn dicyclic_has_unique_involution() {
        for k in 2..=11 {
            let g = dicyclic(4 * k).unwrap();
            assert_eq!(count_of_order(&g, 2), 1, "Dic{}", 4 * k);
            let z = (0..g.order()).find(|&x| g.element_order(x) == 2).unwrap();
            assert_eq!(g.centralizer(z).len(), g.order());
        }
    }

    #[test]
    fn dihedral_reflections() {
        for k in [3u64, 5, 7, 9, 11] {
            let g = dihedral(2 * k).unwrap();
            let rotation = g.generators()[0];
            let rotations = g.cyclic_subgroup(rotation);
            let reflections = (0..g.order())
                .filter(|x| !rotations.contains(x) && g.element_order(*x) == 2)
                .count();
            assert_eq!(reflections as u64, k);
            assert_eq!(count_of_order(&g, 2) as u64, k);
        }
    }

    #[test]
    fn affine_translations_form_the_normal_subgroup() {
        for q in [3u64, 5, 7] {
            let g = affine(q).unwrap();
            let of_order_q: Vec<usize> = (0..g.order())
                .filter(|&x| g.element_order(x) == q)
                .collect();
            assert_eq!(of_order_q.len() as u64, q - 1);
            let sub = g.cyclic_subgroup(of_order_q[0]);
            assert_eq!(sub.len() as u64, q);
            assert!(of_order_q.iter().all(|x| sub.contains(x)));
        }
    }

    #[test]
    fn affine_five_has_trivial_center() {
        let g = affine(5).unwrap();
        let center: Vec<usize> = (0..g.order())
            .filter(|&x| g.centralizer(x).len() == g.order())
            .collect();
        assert_eq!(center, vec![0]);
    }

    #[test]
    fn klein_four_as_dihedral() {
        let v = dihedral(4).unwrap();
        let z2 = cyclic(2).unwrap();
        assert_eq!(
            v.order_multiset(),
            direct_product(&z2, &z2).unwrap().order_multiset()
        );
    }
}
