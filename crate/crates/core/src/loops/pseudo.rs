use super::LoopTable;
use crate::error::{ForgeError, Result};
use crate::perm::Perm;

/// `cf(x)·f(y) = cf(xy)` for all `x`, `y`.
pub fn is_pseudoautomorphism(t: &LoopTable, c: usize, f: &Perm) -> bool {
    let n = t.order();
    f.len() == n
        && (0..n).all(|x| {
            let cfx = t.mul(c, f.apply(x));
            (0..n).all(|y| t.mul(cfx, f.apply(y)) == t.mul(c, f.apply(t.mul(x, y))))
        })
}

/// `f(1) = 1` and `f(x·yx) = f(x)·f(y)f(x)`.
pub fn is_semiautomorphism(t: &LoopTable, f: &Perm) -> bool {
    let n = t.order();
    f.len() == n
        && f.apply(t.identity()) == t.identity()
        && (0..n).all(|x| {
            let fx = f.apply(x);
            (0..n).all(|y| f.apply(t.mul(x, t.mul(y, x))) == t.mul(fx, t.mul(f.apply(y), fx)))
        })
}

/// A permutation with a companion, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoAut {
    companion: usize,
    map: Perm,
}

impl PseudoAut {
    pub fn new(t: &LoopTable, companion: usize, map: Perm) -> Result<Self> {
        if companion >= t.order() || !is_pseudoautomorphism(t, companion, &map) {
            return Err(ForgeError::Validation(format!(
                "({companion}, map) is not a pseudoautomorphism"
            )));
        }
        Ok(PseudoAut { companion, map })
    }

    pub fn identity(t: &LoopTable) -> Self {
        PseudoAut {
            companion: t.identity(),
            map: Perm::identity(t.order()),
        }
    }

    pub fn companion(&self) -> usize {
        self.companion
    }

    pub fn map(&self) -> &Perm {
        &self.map
    }
}

/// `(c,f)(d,g) = (c·f(d), f∘g)`.
pub fn pseudo_compose(t: &LoopTable, p: &PseudoAut, q: &PseudoAut) -> Result<PseudoAut> {
    let c = t.mul(p.companion, p.map.apply(q.companion));
    let map = p.map.compose(&q.map);
    PseudoAut::new(t, c, map)
        .map_err(|e| ForgeError::Internal(format!("composite failed verification: {e}")))
}

/// `(c,f)⁻¹ = (f⁻¹(c\1), f⁻¹)`.
pub fn pseudo_invert(t: &LoopTable, p: &PseudoAut) -> Result<PseudoAut> {
    let finv = p.map.inverse();
    let c = finv.apply(t.inv(p.companion));
    PseudoAut::new(t, c, finv)
        .map_err(|e| ForgeError::Internal(format!("inverse failed verification: {e}")))
}

/// `μ_{f,x} = R_x⁻¹ f⁻¹ R_{f(x)} f`, i.e. `y ↦ f⁻¹(f(y)·f(x)) / x`.
pub fn mu_map(t: &LoopTable, f: &Perm, x: usize) -> Perm {
    let finv = f.inverse();
    let fx = f.apply(x);
    let image = (0..t.order())
        .map(|y| t.rdiv(finv.apply(t.mul(f.apply(y), fx)), x))
        .collect();
    Perm::from_images_unchecked(image)
}
