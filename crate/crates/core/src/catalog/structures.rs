//! Base structures from which every family is assembled.

use std::sync::Arc;

use crate::linstruct::{block_compose, LinError, LinearStructure};
use crate::polyring::{Polynomial, VarTable};

fn entries(params: &[&str], n: usize, rows: &[&str]) -> Result<LinearStructure, LinError> {
    let table = VarTable::new(params.iter().copied())?;
    let coords: Vec<String> = (1..=coord_count(rows)).map(|i| format!("a{i}")).collect();
    let mut names: Vec<String> = params.iter().map(|s| s.to_string()).collect();
    names.extend(coords.iter().cloned());
    let full = VarTable::new(names)?;
    let polys = rows
        .iter()
        .map(|e| Polynomial::parse(&full, e))
        .collect::<Result<Vec<_>, _>>()?;
    let m = crate::polyring::PolyMatrix::from_rows(
        &full,
        polys.chunks(n).map(|c| c.to_vec()).collect(),
    )?;
    let refs: Vec<&str> = coords.iter().map(String::as_str).collect();
    LinearStructure::from_matrix(&table, &refs, &m)
}

/// Largest `k` such that `a<k>` appears in some entry.
fn coord_count(rows: &[&str]) -> usize {
    let mut k = 0;
    for e in rows {
        let b = e.as_bytes();
        let mut i = 0;
        while i < b.len() {
            let starts = b[i] == b'a' && (i == 0 || !b[i - 1].is_ascii_alphanumeric());
            if starts {
                let mut j = i + 1;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                if j > i + 1 && (j == b.len() || !b[j].is_ascii_alphanumeric()) {
                    k = k.max(e[i + 1..j].parse::<usize>().unwrap());
                }
                i = j;
            } else {
                i += 1;
            }
        }
    }
    k
}

/// `[[a1, a2], [-q a2, a1 + p a2]]`.
pub fn quadratic(p: &str, q: &str) -> Result<LinearStructure, LinError> {
    entries(
        &[p, q],
        2,
        &["a1", "a2", &format!("-{q}*a2"), &format!("a1 + {p}*a2")],
    )
}

/// `[[t a1, a2], [b a1 + c a2, -t a1]]`: closed under triple but not pairwise
/// products.
pub fn trace_free(t: &str, b: &str, c: &str) -> Result<LinearStructure, LinError> {
    entries(
        &[b, c, t],
        2,
        &[
            &format!("{t}*a1"),
            "a2",
            &format!("{b}*a1 + {c}*a2"),
            &format!("-{t}*a1"),
        ],
    )
}

/// The five-parameter ternary structure.
pub fn cubic(l: [&str; 5]) -> Result<LinearStructure, LinError> {
    let [l1, l2, l3, l4, l5] = l;
    entries(
        &l,
        3,
        &[
            "a1",
            "a2",
            "a3",
            &format!("-{l3}*({l1} - {l2} - {l3} + {l5})*a2 - {l3}*({l2} - {l4})*a3"),
            &format!("a1 + {l1}*a2 + {l2}*a3"),
            &format!("{l3}*a2 + {l3}*a3"),
            &format!(
                "-{l3}*({l2} - {l4})*a2 + (-{l1}*{l4} + {l2}^2 - {l2}*{l5} + {l3}*{l4})*a3"
            ),
            &format!("{l2}*a2 + {l4}*a3"),
            &format!("a1 + {l3}*a2 + {l5}*a3"),
        ],
    )
}

/// 3x3 circulant with first row `(a1, a2, a3)`, each row shifted right.
pub fn circulant3() -> Result<LinearStructure, LinError> {
    entries(
        &[],
        3,
        &["a1", "a2", "a3", "a3", "a1", "a2", "a2", "a3", "a1"],
    )
}

/// `[[a1, a2], [q a2, a1]]`.
pub fn split_quadratic(q: &str) -> Result<LinearStructure, LinError> {
    entries(&[q], 2, &["a1", "a2", &format!("{q}*a2"), "a1"])
}

/// Block lifting followed by putting the parameters in `order`.
pub fn lift(
    outer: &LinearStructure,
    inner: &LinearStructure,
    order: &[&str],
) -> Result<LinearStructure, LinError> {
    reorder(&block_compose(outer, inner)?, order)
}

pub fn reorder(s: &LinearStructure, order: &[&str]) -> Result<LinearStructure, LinError> {
    let table: Arc<VarTable> = VarTable::new(order.iter().copied())?;
    let n = s.order();
    let h = s.coords();
    let mut coeff = Vec::with_capacity(n * n * h);
    for i in 0..n {
        for j in 0..n {
            for r in 0..h {
                coeff.push(s.coeff(i, j, r).rebase(&table)?);
            }
        }
    }
    LinearStructure::new(n, h, &table, coeff)
}
