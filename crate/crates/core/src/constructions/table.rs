//! Groups given by a multiplication table.

use crate::perm::{FiniteGroup, Permutation, ORDER_CAP};

use super::ConstructionError;

/// Builds a group from its Cayley table, `table[x][y] = x * y`, as the
/// right-regular permutation representation. Element 0 need not be the
/// identity; the table is checked to be a group.
pub fn from_cayley_table(
    label: impl Into<String>,
    table: &[Vec<usize>],
) -> Result<FiniteGroup, ConstructionError> {
    let invalid = |m: String| ConstructionError::InvalidParameter(m);
    let n = table.len();
    if n == 0 || n > ORDER_CAP {
        return Err(invalid(format!("table size {n} outside 1..={ORDER_CAP}")));
    }
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(invalid(format!(
                "row {x} has {} entries, expected {n}",
                row.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in row {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(invalid(format!("row {x} is not a permutation of 0..{n}")));
            }
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| invalid("no identity element".into()))?;
    for x in 0..n {
        if !(0..n).any(|y| table[x][y] == identity) {
            return Err(invalid(format!("element {x} has no inverse")));
        }
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Err(invalid(format!("not associative at ({x}, {y}, {z})")));
                }
            }
        }
    }
    // right multiplication by g sends x to x * g
    let generators: Vec<Permutation> = (0..n)
        .map(|g| {
            let images = (0..n).map(|x| table[x][g] as u32).collect();
            Permutation::from_images(images).expect("rows checked above")
        })
        .collect();
    Ok(FiniteGroup::generate(n, &generators, ORDER_CAP)?.with_label(label))
}
