//! Décalage between ordinary L∞-algebras and shifted ones.
//!
//! Convention: `s⁻¹` lowers degrees by one, `∂ = -d`, and for a sorted
//! tuple `x_1, …, x_m`
//! `{s⁻¹x_1, …, s⁻¹x_m} = -(-1)^{Σ_i (m-i)|s⁻¹x_i|} s⁻¹ l_m(x_1, …, x_m)`.
//! With this choice `Σ (1/m!) l_m(α^m) = 0` for `α` of degree 1 is
//! equivalent to `curv(s⁻¹α) = 0`.

use std::collections::BTreeMap;

use super::algebra::{BasisSymbol, SLieAlgebra, Table};
use super::element::Element;
use super::SlieError;

/// Ordinary L∞ data: antisymmetric brackets `l_m` of degree `2 - m` stored
/// on sorted tuples, and the differential `d = l_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryLInfty {
    pub name: String,
    pub basis: Vec<BasisSymbol>,
    pub differential: BTreeMap<usize, Element>,
    pub brackets: Table,
    pub max_arity: usize,
    pub truncation: u32,
}

fn decalage_negative(basis: &[BasisSymbol], key: &[usize], shifted: bool) -> bool {
    let m = key.len();
    let mut parity = true;
    for (i, &s) in key.iter().enumerate() {
        let deg = if shifted { basis[s].degree } else { basis[s].degree - 1 };
        if ((m - 1 - i) as i64 * deg as i64) % 2 != 0 {
            parity = !parity;
        }
    }
    parity
}

fn signed(e: &Element, negative: bool) -> Element {
    if negative {
        e.neg()
    } else {
        e.clone()
    }
}

pub fn shift_convention(ord: &OrdinaryLInfty) -> Result<SLieAlgebra, SlieError> {
    let basis: Vec<BasisSymbol> = ord
        .basis
        .iter()
        .map(|b| BasisSymbol { name: b.name.clone(), degree: b.degree - 1, weight: b.weight })
        .collect();
    for (key, _) in &ord.brackets {
        // Antisymmetry: an even ordinary symbol cannot repeat.
        if key.windows(2).any(|w| w[0] == w[1] && ord.basis[w[0]].degree % 2 == 0) {
            if !ord.brackets[key].is_zero() {
                return Err(SlieError::Input("antisymmetric bracket repeats an even symbol".into()));
            }
        }
    }
    let diff = ord.differential.iter().map(|(s, e)| (*s, e.neg())).collect();
    let table = ord
        .brackets
        .iter()
        .map(|(k, e)| (k.clone(), signed(e, decalage_negative(&ord.basis, k, false))))
        .collect();
    SLieAlgebra::new(ord.name.clone(), basis, diff, table, ord.max_arity, ord.truncation)
}

pub fn unshift_convention(alg: &SLieAlgebra) -> OrdinaryLInfty {
    let basis: Vec<BasisSymbol> = alg
        .basis()
        .iter()
        .map(|b| BasisSymbol { name: b.name.clone(), degree: b.degree + 1, weight: b.weight })
        .collect();
    let differential = alg
        .differential_table()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(s, e)| (s, e.neg()))
        .collect();
    let brackets = alg
        .brackets()
        .iter()
        .map(|(k, e)| (k.clone(), signed(e, decalage_negative(alg.basis(), k, true))))
        .collect();
    OrdinaryLInfty {
        name: alg.name().to_string(),
        basis,
        differential,
        brackets,
        max_arity: alg.max_arity(),
        truncation: alg.truncation(),
    }
}
