//! Finite loops given by Cayley tables.
//!
//! Elements are table indices `0..n`. Both divisions are tabulated at
//! construction, so every analysis below is table lookups only.

mod congruence;
mod iso;
mod pseudo;
mod subloop;

pub use congruence::{congruence_from_pairs, is_abelian_congruence, Congruence};
pub use iso::{isomorphic, IsoResult, ISO_COMPLETE_BOUND};
pub use pseudo::{
    is_pseudoautomorphism, is_semiautomorphism, mu_map, pseudo_compose, pseudo_invert, PseudoAut,
};
pub use subloop::{derived_subloops, DerivedSubloops};

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::perm::Perm;

/// First defect found while validating a Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopDefect {
    Empty,
    Ragged { row: usize, len: usize },
    IdentityOutOfRange(usize),
    OutOfRange { row: usize, col: usize, value: usize },
    RowRepeat { row: usize, value: usize },
    ColumnRepeat { col: usize, value: usize },
    NotIdentity { id: usize, index: usize },
}

impl fmt::Display for LoopDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopDefect::Empty => write!(f, "empty table"),
            LoopDefect::Ragged { row, len } => write!(f, "row {row} has {len} entries"),
            LoopDefect::IdentityOutOfRange(id) => write!(f, "identity index {id} out of range"),
            LoopDefect::OutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} out of range")
            }
            LoopDefect::RowRepeat { row, value } => write!(f, "row {row} repeats {value}"),
            LoopDefect::ColumnRepeat { col, value } => write!(f, "column {col} repeats {value}"),
            LoopDefect::NotIdentity { id, index } => {
                write!(f, "{id} is not a two-sided identity at {index}")
            }
        }
    }
}

/// Latin-square and identity checks on a square table given as rows.
pub fn loop_validate(rows: &[Vec<usize>], id: usize) -> std::result::Result<(), LoopDefect> {
    let n = rows.len();
    if n == 0 {
        return Err(LoopDefect::Empty);
    }
    if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(LoopDefect::Ragged { row, len: r.len() });
    }
    let flat: Vec<usize> = rows.iter().flatten().copied().collect();
    validate_flat(n, id, &flat)
}

fn validate_flat(n: usize, id: usize, flat: &[usize]) -> std::result::Result<(), LoopDefect> {
    if n == 0 {
        return Err(LoopDefect::Empty);
    }
    if id >= n {
        return Err(LoopDefect::IdentityOutOfRange(id));
    }
    let mut seen = vec![0u32; n];
    for row in 0..n {
        for col in 0..n {
            let value = flat[row * n + col];
            if value >= n {
                return Err(LoopDefect::OutOfRange { row, col, value });
            }
            if seen[value] == row as u32 + 1 {
                return Err(LoopDefect::RowRepeat { row, value });
            }
            seen[value] = row as u32 + 1;
        }
    }
    seen.fill(0);
    for col in 0..n {
        for row in 0..n {
            let value = flat[row * n + col];
            if seen[value] == col as u32 + 1 {
                return Err(LoopDefect::ColumnRepeat { col, value });
            }
            seen[value] = col as u32 + 1;
        }
    }
    for index in 0..n {
        if flat[id * n + index] != index || flat[index * n + id] != index {
            return Err(LoopDefect::NotIdentity { id, index });
        }
    }
    Ok(())
}

/// A validated finite loop.
#[derive(Clone, PartialEq, Eq)]
pub struct LoopTable {
    n: usize,
    id: usize,
    mul: Vec<u32>,
    ldiv: Vec<u32>,
    rdiv: Vec<u32>,
}

impl fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopTable(n={}, id={})", self.n, self.id)
    }
}

impl LoopTable {
    pub fn new(rows: &[Vec<usize>], id: usize) -> Result<Self> {
        loop_validate(rows, id).map_err(|d| ForgeError::Structural(format!("invalid loop table: {d}")))?;
        let flat = rows.iter().flatten().copied().collect();
        Ok(Self::from_validated(rows.len(), id, flat))
    }

    /// Row-major `n*n` table.
    pub fn from_flat(n: usize, id: usize, flat: Vec<usize>) -> Result<Self> {
        if flat.len() != n * n {
            return Err(ForgeError::Structural(format!(
                "table has {} entries, expected {}",
                flat.len(),
                n * n
            )));
        }
        validate_flat(n, id, &flat).map_err(|d| ForgeError::Structural(format!("invalid loop table: {d}")))?;
        Ok(Self::from_validated(n, id, flat))
    }

    fn from_validated(n: usize, id: usize, flat: Vec<usize>) -> Self {
        let mul: Vec<u32> = flat.iter().map(|&v| v as u32).collect();
        let mut ldiv = vec![0u32; n * n];
        let mut rdiv = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = mul[x * n + y] as usize;
                ldiv[x * n + z] = y as u32;
                rdiv[z * n + y] = x as u32;
            }
        }
        LoopTable { n, id, mul, ldiv, rdiv }
    }

    /// Cayley table of `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(ForgeError::Structural("cyclic group of order 0".into()));
        }
        let flat = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Ok(Self::from_validated(n, 0, flat))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y] as usize
    }

    /// `x\y`, the unique `z` with `xz = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y] as usize
    }

    /// `x/y`, the unique `z` with `zy = x`.
    #[inline]
    pub fn rdiv(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.n + y] as usize
    }

    /// `x\1`. Equals the two-sided inverse in inverse-property loops.
    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.ldiv(x, self.id)
    }

    /// `x^k`, by repeated left multiplication; negative `k` uses `x\1`.
    pub fn power(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(self.id, |acc, _| self.mul(base, acc))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn flat(&self) -> Vec<usize> {
        self.mul.iter().map(|&v| v as usize).collect()
    }

    pub fn divisions(&self, x: usize, y: usize) -> Divisions {
        Divisions {
            ldiv: self.ldiv(x, y),
            rdiv: self.rdiv(x, y),
        }
    }

    /// `T_x = R_x^{-1}L_x`, `L_{x,y} = L_{xy}^{-1}L_xL_y`, `R_{x,y} = R_{xy}^{-1}R_yR_x`.
    pub fn inner_mapping(&self, kind: InnerKind, x: usize, y: Option<usize>) -> Result<Perm> {
        let n = self.n;
        let image: Vec<usize> = match (kind, y) {
            (InnerKind::T, _) => (0..n).map(|a| self.conj(x, a)).collect(),
            (InnerKind::L, Some(y)) => (0..n).map(|a| self.inner_l(x, y, a)).collect(),
            (InnerKind::R, Some(y)) => (0..n).map(|a| self.inner_r(x, y, a)).collect(),
            (k, None) => {
                return Err(ForgeError::Validation(format!(
                    "inner mapping {k:?} needs a second element"
                )))
            }
        };
        Ok(Perm::from_images_unchecked(image))
    }

    /// `T_x(a) = (xa)/x`.
    #[inline]
    pub fn conj(&self, x: usize, a: usize) -> usize {
        self.rdiv(self.mul(x, a), x)
    }

    /// `T_x^{-1}(a) = x\(ax)`.
    #[inline]
    pub fn conj_inv(&self, x: usize, a: usize) -> usize {
        self.ldiv(x, self.mul(a, x))
    }

    /// `T_x^k(a)` for any integer `k`.
    pub fn conj_pow(&self, x: usize, k: i64, a: usize) -> usize {
        (0..k.unsigned_abs()).fold(a, |acc, _| {
            if k < 0 {
                self.conj_inv(x, acc)
            } else {
                self.conj(x, acc)
            }
        })
    }

    #[inline]
    pub fn inner_l(&self, x: usize, y: usize, a: usize) -> usize {
        self.ldiv(self.mul(x, y), self.mul(x, self.mul(y, a)))
    }

    #[inline]
    pub fn inner_r(&self, x: usize, y: usize, a: usize) -> usize {
        self.rdiv(self.mul(self.mul(a, x), y), self.mul(x, y))
    }

    /// `[x,y]` with `(yx)[x,y] = xy`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.ldiv(self.mul(y, x), self.mul(x, y))
    }

    /// `[x,y,z]` with `(x·yz)[x,y,z] = xy·z`.
    pub fn associator(&self, x: usize, y: usize, z: usize) -> usize {
        self.ldiv(self.mul(x, self.mul(y, z)), self.mul(self.mul(x, y), z))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).into_par_iter().all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn nucleus(&self) -> Vec<usize> {
        let n = self.n;
        (0..n)
            .into_par_iter()
            .filter(|&a| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        let yz = self.mul(y, z);
                        self.mul(self.mul(a, y), z) == self.mul(a, yz)
                            && self.mul(self.mul(y, a), z) == self.mul(y, self.mul(a, z))
                            && self.mul(yz, a) == self.mul(y, self.mul(z, a))
                    })
                })
            })
            .collect()
    }

    pub fn center(&self) -> Vec<usize> {
        self.nucleus()
            .into_iter()
            .filter(|&a| (0..self.n).all(|y| self.mul(a, y) == self.mul(y, a)))
            .collect()
    }

    /// Each identity scanned separately; witnesses are lexicographically least.
    pub fn check_moufang(&self) -> MoufangReport {
        let identities = MoufangIdentity::DEFINING
            .iter()
            .map(|&id| IdentityResult {
                identity: id,
                witness: self.first_violation(id),
            })
            .collect();
        MoufangReport { identities }
    }

    pub fn is_moufang(&self) -> bool {
        self.first_violation(MoufangIdentity::M1).is_none()
    }

    /// Least triple `(x,y,z)` at which `id` fails.
    pub fn first_violation(&self, id: MoufangIdentity) -> Option<[usize; 3]> {
        let n = self.n;
        (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                for z in 0..n {
                    if !id.holds_at(self, x, y, z) {
                        return Some([x, y, z]);
                    }
                }
            }
            None
        })
    }

    /// Elements generated by `gens` under multiplication (always containing the identity).
    pub fn subloop_generated(&self, gens: &[usize]) -> Vec<usize> {
        subloop::generated(self, gens)
    }

    pub fn is_subloop(&self, set: &[usize]) -> bool {
        subloop::is_subloop(self, set)
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        subloop::is_normal(self, set)
    }

    pub fn normal_closure(&self, set: &[usize]) -> Vec<usize> {
        subloop::normal_closure(self, set)
    }

    pub fn quotient(&self, normal: &[usize]) -> Result<LoopTable> {
        subloop::quotient(self, normal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Divisions {
    pub ldiv: usize,
    pub rdiv: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnerKind {
    T,
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoufangIdentity {
    /// `xy·zx = (x·yz)x`
    M1,
    /// `xy·zx = x(yz·x)`
    M2,
    /// `x(y·zy) = (xy·z)y`
    M3,
    /// `x(y·xz) = (xy·x)z`
    M4,
    /// `x⁻¹(xy·z) = yx⁻¹·xz`
    M5,
    /// `(z·yx)x⁻¹ = zx·x⁻¹y`
    M6,
}

impl MoufangIdentity {
    pub const DEFINING: [MoufangIdentity; 4] = [Self::M1, Self::M2, Self::M3, Self::M4];

    pub fn holds_at(self, t: &LoopTable, x: usize, y: usize, z: usize) -> bool {
        let m = |a, b| t.mul(a, b);
        match self {
            Self::M1 => m(m(x, y), m(z, x)) == m(m(x, m(y, z)), x),
            Self::M2 => m(m(x, y), m(z, x)) == m(x, m(m(y, z), x)),
            Self::M3 => m(x, m(y, m(z, y))) == m(m(m(x, y), z), y),
            Self::M4 => m(x, m(y, m(x, z))) == m(m(m(x, y), x), z),
            Self::M5 => {
                let xi = t.inv(x);
                m(xi, m(m(x, y), z)) == m(m(y, xi), m(x, z))
            }
            Self::M6 => {
                let xi = t.inv(x);
                m(m(z, m(y, x)), xi) == m(m(z, x), m(xi, y))
            }
        }
    }
}

impl fmt::Display for MoufangIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub identity: MoufangIdentity,
    pub witness: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoufangReport {
    pub identities: Vec<IdentityResult>,
}

impl MoufangReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|r| r.witness.is_none())
    }
}
