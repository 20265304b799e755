//! Evaluation of symmetric multilinear tables on elements of `L ⊗ Ω_n`.

use super::algebra::{SLieAlgebra, Table};
use super::element::Element;
use crate::forms::PolyForm;

/// Koszul sign of the permutation `perm` (the value at position `k` is the
/// original index placed there) acting on elements of the given degrees.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> Result<bool, super::SlieError> {
    if perm.len() != degrees.len() {
        return Err(super::SlieError::Input("permutation and degree list differ in length".into()));
    }
    let mut neg = false;
    for a in 0..perm.len() {
        for b in (a + 1)..perm.len() {
            if perm[a] > perm[b] && degrees[perm[a]] % 2 != 0 && degrees[perm[b]] % 2 != 0 {
                neg = !neg;
            }
        }
    }
    Ok(neg)
}

struct Piece {
    sym: usize,
    weight: u32,
    odd: bool,
    form_odd: bool,
    form: PolyForm,
}

fn pieces(x: &Element, src: &SLieAlgebra) -> Vec<Piece> {
    let mut out = Vec::new();
    for (s, f) in x.terms() {
        for k in f.degrees() {
            out.push(Piece {
                sym: *s,
                weight: src.weight(*s),
                odd: src.degree(*s) % 2 != 0,
                form_odd: k % 2 == 1,
                form: f.component(k),
            });
        }
    }
    out.sort_by_key(|p| p.weight);
    out
}

/// Sign of sorting `syms` into non-decreasing order, for symbols with the
/// given parities.
fn sort_sign(syms: &mut [(usize, bool)]) -> bool {
    let mut neg = false;
    // Insertion sort keeps equal symbols stable.
    for i in 1..syms.len() {
        let mut j = i;
        while j > 0 && syms[j - 1].0 > syms[j].0 {
            if syms[j - 1].1 && syms[j].1 {
                neg = !neg;
            }
            syms.swap(j - 1, j);
            j -= 1;
        }
    }
    neg
}

/// `T(x_1, …, x_m)` for a table `T` on sorted symbol tuples of `src`, with
/// results in `tgt`. Forms are moved to the right of all symbols with the
/// Koszul sign, and tuples whose total weight exceeds the target
/// truncation are skipped.
pub(crate) fn eval_table(table: &Table, src: &SLieAlgebra, tgt: &SLieAlgebra, args: &[&Element]) -> Element {
    let dim = args[0].dim();
    let mut out = Element::zero(dim);
    let m = args.len();
    if table.is_empty() || args.iter().any(|a| a.is_zero()) {
        return out;
    }
    if !table.keys().any(|k| k.len() == m) {
        return out;
    }
    let ps: Vec<Vec<Piece>> = args.iter().map(|a| pieces(a, src)).collect();
    let min_w: Vec<u32> = ps.iter().map(|p| p[0].weight).collect();
    // suffix[k] = minimal weight still needed by arguments k..m.
    let mut suffix = vec![0u32; m + 1];
    for k in (0..m).rev() {
        suffix[k] = suffix[k + 1] + min_w[k];
    }
    let limit = tgt.truncation();
    if suffix[0] > limit {
        return out;
    }
    let mut state = State { syms: Vec::with_capacity(m), out: &mut out, table, limit, suffix: &suffix };
    state.rec(&ps, 0, 0, false, false, &PolyForm::one(dim));
    out
}

struct State<'a> {
    syms: Vec<(usize, bool)>,
    out: &'a mut Element,
    table: &'a Table,
    limit: u32,
    suffix: &'a [u32],
}

impl<'a> State<'a> {
    fn rec(&mut self, ps: &[Vec<Piece>], k: usize, weight: u32, form_parity: bool, sign: bool, form: &PolyForm) {
        if k == ps.len() {
            let mut sorted = self.syms.clone();
            let s = sort_sign(&mut sorted) ^ sign;
            let key: Vec<usize> = sorted.iter().map(|p| p.0).collect();
            if let Some(val) = self.table.get(&key) {
                for (t, g) in val.terms() {
                    let c = g.eval_vertex(0).unwrap();
                    let c = if s { -c } else { c };
                    self.out.add_term(*t, &form.scale(&c));
                }
            }
            return;
        }
        for p in &ps[k] {
            if weight + p.weight + self.suffix[k + 1] > self.limit {
                break;
            }
            // Moving the forms collected so far past the symbol p.sym.
            let s = sign ^ (form_parity && p.odd);
            let f = form.wedge_unchecked(&p.form);
            if f.is_zero() {
                continue;
            }
            self.syms.push((p.sym, p.odd));
            self.rec(ps, k + 1, weight + p.weight, form_parity ^ p.form_odd, s, &f);
            self.syms.pop();
        }
    }
}

