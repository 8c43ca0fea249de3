//! Joint-distribution tables: rows are count vectors, columns inversion counts.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::dist::{support_bound_i, JointPmf, Probability};
use crate::error::Result;
use crate::io::{csv_string, Render};
use crate::qcomb::{enumerate_compositions, gaussian_multinomial, Composition};

/// `c*p1^e1*p2*...`: coefficient omitted when 1, exponent omitted when 1,
/// `"0"` for a zero coefficient and `"1"` for the empty product.
pub fn monomial_string(coefficient: &BigUint, y: &Composition) -> String {
    if coefficient.is_zero() {
        return "0".into();
    }
    let mut factors = Vec::new();
    if !coefficient.is_one() {
        factors.push(coefficient.to_string());
    }
    for (idx, &e) in y.parts().iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(format!("p{}", idx + 1)),
            _ => factors.push(format!("p{}^{e}", idx + 1)),
        }
    }
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

/// Joint table with symbolic cells `inv(y; i) * p^y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTable {
    pub n: u32,
    pub k: usize,
    /// Column count is `support_bound_i(n, k) + 1`.
    pub columns: usize,
    /// One row per composition, lexicographic; one cell per column.
    pub rows: Vec<(Composition, Vec<String>)>,
}

impl SymbolicTable {
    pub fn new(n: u32, k: usize) -> Self {
        let columns = support_bound_i(n, k) as usize + 1;
        let rows = enumerate_compositions(n, k)
            .into_iter()
            .map(|y| {
                let poly = gaussian_multinomial(&y);
                let cells = (0..columns)
                    .map(|i| monomial_string(&poly.coeff(i), &y))
                    .collect();
                (y, cells)
            })
            .collect();
        Self {
            n,
            k,
            columns,
            rows,
        }
    }

    pub fn cell(&self, y: &Composition, i: usize) -> Option<&str> {
        self.rows
            .iter()
            .find(|(row, _)| row == y)
            .and_then(|(_, cells)| cells.get(i))
            .map(String::as_str)
    }

    pub fn to_pretty(&self) -> String {
        let header: Vec<String> = (0..self.columns).map(|i| format!("I={i}")).collect();
        let body: Vec<(String, Vec<String>)> = self
            .rows
            .iter()
            .map(|(y, cells)| (y.to_string(), cells.clone()))
            .collect();
        grid("y", &header, &body)
    }

    /// Long format over the support of each row.
    pub fn to_csv(&self) -> Result<String> {
        csv_string(
            &["y", "i", "probability"],
            self.rows.iter().flat_map(|(y, cells)| {
                cells
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.as_str() != "0")
                    .map(move |(i, c)| [y.to_string(), i.to_string(), c.clone()])
            }),
        )
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .rows
            .iter()
            .flat_map(|(y, cells)| {
                cells
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.as_str() != "0")
                    .map(move |(i, c)| json!({ "y": y.parts(), "i": i, "p": c }))
            })
            .collect();
        json!({ "n": self.n, "k": self.k, "mode": "symbolic", "entries": cells })
    }
}

/// Pretty grid of a numeric joint pmf with zero cells shown as `0`.
pub fn joint_pretty<P: Probability + Render>(pmf: &JointPmf<P>, digits: usize) -> String {
    let columns = support_bound_i(pmf.n(), pmf.k()) as usize + 1;
    let header: Vec<String> = (0..columns).map(|i| format!("I={i}")).collect();
    let mut body: Vec<(String, Vec<String>)> = enumerate_compositions(pmf.n(), pmf.k())
        .into_iter()
        .map(|y| {
            let cells = (0..columns)
                .map(|i| pmf.get(&y, i as u64).render(digits))
                .collect();
            (y.to_string(), cells)
        })
        .collect();
    let totals = pmf.marginal_i().iter().map(|p| p.render(digits)).collect();
    body.push(("P(I=i)".into(), totals));
    grid("y", &header, &body)
}

pub(crate) fn grid(corner: &str, header: &[String], body: &[(String, Vec<String>)]) -> String {
    let mut widths: Vec<usize> = std::iter::once(corner.len())
        .chain(header.iter().map(String::len))
        .collect();
    for (label, cells) in body {
        widths[0] = widths[0].max(label.len());
        for (w, c) in widths[1..].iter_mut().zip(cells) {
            *w = (*w).max(c.len());
        }
    }
    let line = |label: &str, cells: &[String]| {
        let mut s = format!("{label:<w$}", w = widths[0]);
        for (c, w) in cells.iter().zip(&widths[1..]) {
            s.push_str(&format!(" | {c:>w$}"));
        }
        s.trim_end().to_string()
    };
    let mut out = vec![line(corner, header)];
    out.push(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .join("-+-"),
    );
    out.extend(body.iter().map(|(label, cells)| line(label, cells)));
    out.join("\n") + "\n"
}
