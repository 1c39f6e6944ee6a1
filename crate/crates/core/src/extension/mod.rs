//! The loop `C ⋉_(g,γ) X` on pairs `(b^i, x)`, `C = ⟨b⟩` cyclic of order `n`.
//!
//! Multiplication is
//! `(b^i,x)(b^j,y) = (b^{i+j}, g^{-j}x + y + Δ_{I(i+j,-j)}(x,y))`.
//! Table element `(i, x)` has index `i·|X| + x`, so the identity is `0`.

mod closed;
mod roundtrip;

pub use closed::{ext_associator, ext_commutator, ext_derived, ext_nucleus_center, ExtDerived, NucleusCenter};
pub use roundtrip::{
    central_cyclic_kernels, extract_moufang_permutation, split_roundtrip, verify_theorem_multiplication,
    Embedding, RoundTrip, TheoremCheck,
};

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::loops::LoopTable;
use crate::pair::ConstructionPair;

pub const DEFAULT_TABLE_CAP: usize = 4096;

/// `FORGE_TABLE_CAP` if set and parseable, else the default.
pub fn table_cap() -> usize {
    std::env::var("FORGE_TABLE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_TABLE_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtElement {
    pub i: u64,
    pub x: usize,
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(b^{}, {})", self.i, self.x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDefinedness {
    pub g_order: u64,
    pub r: String,
    pub g_divides_n: bool,
    pub r_divides_n: bool,
    /// Outcome of the direct comparison of products under shifted representatives.
    pub representative_independent: bool,
}

impl WellDefinedness {
    pub fn holds(&self) -> bool {
        self.g_divides_n && self.r_divides_n
    }

    /// The failed divisibility conditions, e.g. `|g| ∤ n`.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.g_divides_n {
            out.push(format!("|g| ∤ n (|g| = {})", self.g_order));
        }
        if !self.r_divides_n {
            out.push(format!("r ∤ n (r = {})", self.r));
        }
        out
    }
}

/// Raw product formula with integer exponents, no reduction of `i`, `j`.
fn mul_raw(p: &ConstructionPair, i: i64, x: usize, j: i64, y: usize) -> usize {
    let gx = p.g_pow(-j).apply(x);
    let s = p.group().add_idx(gx, y);
    p.group().add_idx(s, p.delta_interval(i + j, -j, x, y))
}

/// Divisibility test plus a direct scan that shifting `i` or `j` by `n` does
/// not change the product. The scan is exhaustive while `n²|X|² ≤ 10⁶` and
/// strided beyond that.
pub fn check_well_defined(n: u64, pair: &ConstructionPair) -> Result<WellDefinedness> {
    if n == 0 {
        return Err(ForgeError::Validation("cyclic order must be at least 1".into()));
    }
    let m = pair.group().order();
    let total = (n as u128) * (n as u128) * (m as u128) * (m as u128);
    let stride = ((total / 1_000_000) as usize).max(1);
    let nn = n as i64;
    let mut independent = true;
    let mut counter = 0usize;
    'scan: for i in 0..nn {
        for j in 0..nn {
            for x in 0..m {
                for y in 0..m {
                    counter += 1;
                    if !counter.is_multiple_of(stride) {
                        continue;
                    }
                    let base = mul_raw(pair, i, x, j, y);
                    if mul_raw(pair, i + nn, x, j, y) != base
                        || mul_raw(pair, i, x, j + nn, y) != base
                        || mul_raw(pair, i + nn, x, j + nn, y) != base
                    {
                        independent = false;
                        break 'scan;
                    }
                }
            }
        }
    }
    Ok(WellDefinedness {
        g_order: pair.g_order(),
        r: pair.r().to_string(),
        g_divides_n: n.is_multiple_of(pair.g_order()),
        r_divides_n: pair.r().divides(n as i64),
        representative_independent: independent,
    })
}

/// A construction pair together with a cyclic order `n` satisfying the
/// divisibility conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    n: u64,
    pair: ConstructionPair,
}

impl ExtensionSpec {
    pub fn new(n: u64, pair: ConstructionPair) -> Result<Self> {
        if n == 0 {
            return Err(ForgeError::Validation("cyclic order must be at least 1".into()));
        }
        let g_ok = n.is_multiple_of(pair.g_order());
        let r_ok = pair.r().divides(n as i64);
        if !(g_ok && r_ok) {
            let mut why = Vec::new();
            if !g_ok {
                why.push(format!("|g| ∤ n (|g| = {}, n = {n})", pair.g_order()));
            }
            if !r_ok {
                why.push(format!("r ∤ n (r = {}, n = {n})", pair.r()));
            }
            return Err(ForgeError::IllDefined(why.join("; ")));
        }
        Ok(ExtensionSpec { n, pair })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn pair(&self) -> &ConstructionPair {
        &self.pair
    }

    pub fn x_order(&self) -> usize {
        self.pair.group().order()
    }

    pub fn order(&self) -> usize {
        self.n as usize * self.x_order()
    }

    pub fn element(&self, i: i64, x: usize) -> ExtElement {
        ExtElement {
            i: i.rem_euclid(self.n as i64) as u64,
            x,
        }
    }

    pub fn index_of(&self, e: ExtElement) -> usize {
        e.i as usize * self.x_order() + e.x
    }

    pub fn element_at(&self, idx: usize) -> ExtElement {
        let m = self.x_order();
        ExtElement {
            i: (idx / m) as u64,
            x: idx % m,
        }
    }

    /// Table indices of `1 × X`.
    pub fn x_indices(&self) -> Vec<usize> {
        (0..self.x_order()).collect()
    }

    /// Table indices of `C × 0`.
    pub fn c_indices(&self) -> Vec<usize> {
        (0..self.n as usize).map(|i| i * self.x_order()).collect()
    }
}

pub fn ext_mul(spec: &ExtensionSpec, a: ExtElement, b: ExtElement) -> ExtElement {
    let (i, j) = (a.i as i64, b.i as i64);
    spec.element(i + j, mul_raw(&spec.pair, i, a.x, j, b.x))
}

/// `(b^i,x)^{-1} = (b^{-i}, -g^i(x))`.
pub fn ext_inverse(spec: &ExtensionSpec, a: ExtElement) -> ExtElement {
    let p = &spec.pair;
    let gx = p.g_pow(a.i as i64).apply(a.x);
    spec.element(-(a.i as i64), p.group().neg_idx(gx))
}

pub fn build_table(spec: &ExtensionSpec) -> Result<LoopTable> {
    build_table_with_cap(spec, table_cap())
}

pub fn build_table_with_cap(spec: &ExtensionSpec, cap: usize) -> Result<LoopTable> {
    let order = spec.order();
    if order > cap {
        return Err(ForgeError::Resource(format!(
            "loop order {order} exceeds the table cap {cap}"
        )));
    }
    let flat: Vec<usize> = (0..order)
        .into_par_iter()
        .flat_map_iter(|a| {
            let ea = spec.element_at(a);
            (0..order).map(move |b| spec.index_of(ext_mul(spec, ea, spec.element_at(b))))
        })
        .collect();
    LoopTable::from_flat(order, 0, flat)
        .map_err(|e| ForgeError::Internal(format!("built table is not a loop: {e}")))
}
