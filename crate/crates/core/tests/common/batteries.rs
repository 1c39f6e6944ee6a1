//! Brute-force checks of the structural identities. Each battery recomputes
//! its quantities from tables and permutation images rather than calling the
//! library routines under test.

use std::collections::BTreeSet;

use moufang_forge::extension::{extract_moufang_permutation, Embedding, ExtensionSpec};
use moufang_forge::loops::{is_pseudoautomorphism, is_semiautomorphism, mu_map, LoopTable};
use moufang_forge::maps::{BiAddMap, PermTable};
use moufang_forge::pair::{
    beta_of, cube_pair, moufang_power_pair, pair_inverse, verify_construction_pair, ConstructionPair, MoufangPair,
};
use moufang_forge::perm::Perm;
use moufang_forge::AbelianGroup;

use super::tuples;

#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: u64,
    pub failures: u64,
    pub examples: Vec<String>,
}

impl Outcome {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < 5 {
                self.examples.push(what());
            }
        }
    }

    pub fn merge(&mut self, other: Outcome) {
        self.checks += other.checks;
        self.failures += other.failures;
        for e in other.examples {
            if self.examples.len() < 5 {
                self.examples.push(e);
            }
        }
    }

    pub fn clean(&self) -> bool {
        self.failures == 0
    }
}

/// Powers of a permutation given by its images, indexed modulo its order.
pub struct Powers {
    table: Vec<Vec<usize>>,
}

impl Powers {
    pub fn new(images: &[usize]) -> Self {
        let id: Vec<usize> = (0..images.len()).collect();
        let mut table = vec![id.clone()];
        let mut cur: Vec<usize> = images.to_vec();
        while cur != id {
            table.push(cur.clone());
            cur = cur.iter().map(|&v| images[v]).collect();
        }
        Powers { table }
    }

    pub fn order(&self) -> i64 {
        self.table.len() as i64
    }

    pub fn get(&self, e: i64) -> &[usize] {
        &self.table[e.rem_euclid(self.order()) as usize]
    }

    pub fn apply(&self, e: i64, x: usize) -> usize {
        self.get(e)[x]
    }
}

fn range(i: i64, j: i64) -> std::ops::Range<i64> {
    i.min(j)..i.max(j)
}

fn sum<I: IntoIterator<Item = usize>>(g: &AbelianGroup, it: I) -> usize {
    it.into_iter().fold(0, |a, b| g.add_idx(a, b))
}

/// `Σ_{k∈U} g^{-k}(v)`
fn delta_over<I: IntoIterator<Item = i64>>(grp: &AbelianGroup, pw: &Powers, u: I, v: usize) -> usize {
    sum(grp, u.into_iter().map(|k| pw.apply(-k, v)))
}

fn radical(grp: &AbelianGroup, gamma: &dyn Fn(usize, usize) -> usize) -> Vec<usize> {
    let m = grp.order();
    (0..m).filter(|&x| (0..m).all(|y| gamma(x, y) == 0)).collect()
}

/// The construction-pair axioms, recomputed.
pub fn pair_axioms(grp: &AbelianGroup, g: &[usize], gamma: &dyn Fn(usize, usize) -> usize) -> bool {
    let m = grp.order();
    let pw = Powers::new(g);
    let rad = radical(grp, gamma);
    for x in 0..m {
        for y in 0..m {
            let c = gamma(x, y);
            if c != gamma(y, x) || !rad.contains(&c) {
                return false;
            }
            if (0..m).any(|z| gamma(grp.add_idx(x, z), y) != grp.add_idx(gamma(x, y), gamma(z, y))) {
                return false;
            }
            let lhs = pw.apply(-1, grp.add_idx(g[x], g[y]));
            let rhs = sum(grp, [x, y, c, pw.apply(-1, c), pw.apply(-2, c)]);
            if lhs != rhs || pw.apply(-1, c) != gamma(g[x], y) {
                return false;
            }
        }
        if gamma(x, x) != 0 {
            return false;
        }
    }
    true
}

/// Lemmas on construction pairs: radical and image invariance, the power
/// formulas, interval sums and the value of `r`.
pub fn pair_battery(p: &ConstructionPair) -> Outcome {
    let mut o = Outcome::default();
    let grp = p.group();
    let m = grp.order();
    let g = p.g().images();
    let gam = |x: usize, y: usize| p.gamma().get(x, y);
    let pw = Powers::new(g);
    let ord = pw.order();

    o.check(pair_axioms(grp, g, &gam), || "axioms".into());
    o.check(ord as u64 == p.g_order(), || format!("|g| {} vs {}", ord, p.g_order()));

    let rad = radical(grp, &gam);
    let img: BTreeSet<usize> = (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).map(|(x, y)| gam(x, y)).collect();
    o.check(g[0] == 0, || "g(0)".into());
    for x in 0..m {
        o.check(g[grp.neg_idx(x)] == grp.neg_idx(g[x]), || format!("g(-x) at {x}"));
        o.check(g[grp.add_idx(x, x)] == grp.add_idx(g[x], g[x]), || format!("g(2x) at {x}"));
    }
    for i in -4..=4 {
        let gi = pw.get(i);
        let rad_img: BTreeSet<usize> = rad.iter().map(|&r| gi[r]).collect();
        o.check(rad_img == rad.iter().copied().collect(), || format!("g^{i} rad"));
        let img_img: BTreeSet<usize> = img.iter().map(|&v| gi[v]).collect();
        o.check(img_img == img, || format!("g^{i} img"));
        for &r in &rad {
            for y in 0..m {
                o.check(gi[grp.add_idx(r, y)] == grp.add_idx(gi[r], gi[y]), || {
                    format!("g^{i} additive at rad {r}, {y}")
                });
            }
        }
    }

    // γ(g^i x, g^j y) = g^{-i-j} γ(x,y)
    for i in -4..=4 {
        for j in -4..=4 {
            for x in 0..m {
                for y in 0..m {
                    o.check(gam(pw.apply(i, x), pw.apply(j, y)) == pw.apply(-i - j, gam(x, y)), || {
                        format!("power rule i={i} j={j} x={x} y={y}")
                    });
                }
            }
        }
    }

    for i in -3..=3 {
        for x in 0..m {
            for y in 0..m {
                let c = gam(x, y);
                // g^{-i}(g^i x + g^i y) = x + y + Δ_{I(0,3i)}
                let lhs = pw.apply(-i, grp.add_idx(pw.apply(i, x), pw.apply(i, y)));
                let rhs = sum(grp, [x, y, delta_over(grp, &pw, range(0, 3 * i), c)]);
                o.check(lhs == rhs, || format!("power pair i={i} x={x} y={y}"));
                // g^{-i}(x+y) = g^{-i}x + g^{-i}y + Δ_{I(-2i,i)}
                let lhs = pw.apply(-i, grp.add_idx(x, y));
                let rhs = sum(grp, [pw.apply(-i, x), pw.apply(-i, y), delta_over(grp, &pw, range(-2 * i, i), c)]);
                o.check(lhs == rhs, || format!("power additivity i={i} x={x} y={y}"));
            }
        }
    }

    // interval sums
    let ivs: Vec<(i64, i64)> = (-3..=3).flat_map(|a| (-3..=3).map(move |b| (a, b))).collect();
    for &(a, b) in &ivs {
        for x in 0..m {
            for y in 0..m {
                let c = gam(x, y);
                let d = delta_over(grp, &pw, range(a, b), c);
                o.check(p.delta_interval(a, b, x, y) == d, || format!("library Δ I({a},{b}) at {x},{y}"));
                for i in -3..=3 {
                    o.check(pw.apply(i, d) == delta_over(grp, &pw, range(a, b).map(|k| k - i), c), || {
                        format!("g^i Δ i={i} I({a},{b})")
                    });
                    for j in -3..=3 {
                        let lhs = delta_over(grp, &pw, range(a, b), gam(pw.apply(i, x), pw.apply(j, y)));
                        let rhs = delta_over(grp, &pw, range(a, b).map(|k| k + i + j), c);
                        o.check(lhs == rhs, || format!("Δ shift i={i} j={j} I({a},{b})"));
                    }
                }
            }
        }
        for &(c1, c2) in &ivs {
            let u: BTreeSet<i64> = range(a, b).collect();
            let v: BTreeSet<i64> = range(c1, c2).collect();
            let sym: Vec<i64> = u.symmetric_difference(&v).copied().collect();
            for x in 0..m {
                for y in 0..m {
                    let c = gam(x, y);
                    let lhs = grp.add_idx(delta_over(grp, &pw, u.iter().copied(), c), delta_over(grp, &pw, v.iter().copied(), c));
                    o.check(lhs == delta_over(grp, &pw, sym.iter().copied(), c), || {
                        format!("Δ_U + Δ_V, I({a},{b}) I({c1},{c2})")
                    });
                }
            }
        }
    }

    // r by definition
    let in_rad = |v: usize| rad.contains(&v);
    let r = (1..=3 * ord)
        .find(|&r| (0..m).all(|x| in_rad(sum(grp, (0..r).map(|k| pw.apply(k, x))))))
        .expect("r ≤ 3|g|");
    o.check(p.r().finite() == Some(r as u64), || format!("r {r} vs {}", p.r()));
    o.check(p.r_by_divisors() == p.r(), || "r by divisors".into());
    o.check((3 * ord) % r == 0, || format!("r = {r} does not divide 3|g| = {}", 3 * ord));
    if rad.iter().all(|&v| grp.order_idx(v) != 3) {
        o.check(ord % r == 0, || format!("r = {r} does not divide |g| = {ord}"));
    }
    for n in 0..=3 * ord {
        let vanishes = (0..m).all(|x| (0..m).all(|y| delta_over(grp, &pw, 0..n, gam(x, y)) == 0));
        o.check(vanishes == (n == 0 || n % r == 0), || format!("Δ_I(0,{n}) vanishing with r = {r}"));
        for x in 0..m {
            let s = sum(grp, (0..n).map(|k| pw.apply(k, x)));
            for y in 0..m {
                o.check(delta_over(grp, &pw, 0..n, gam(x, y)) == gam(s, y), || format!("Δ_I(0,{n}) as γ(Σ g^k x, y)"));
            }
        }
    }

    // (g^{-1}, gγ)
    let ginv = pw.get(-1).to_vec();
    let ggam = |x: usize, y: usize| g[gam(x, y)];
    o.check(pair_axioms(grp, &ginv, &ggam), || "inverse pair".into());
    match pair_inverse(p) {
        Ok(q) => {
            o.check(q.g().images() == ginv.as_slice(), || "inverse pair g".into());
            o.check((0..m).all(|x| (0..m).all(|y| q.gamma().get(x, y) == ggam(x, y))), || "inverse pair γ".into());
        }
        Err(e) => o.check(false, || format!("pair_inverse: {e}")),
    }
    o
}

/// Lemmas on Moufang permutations and their powers.
pub fn moufang_battery(f: &PermTable) -> Outcome {
    let mut o = Outcome::default();
    let grp = f.group();
    let m = grp.order();
    let pw = Powers::new(f.images());
    let defect = |pw: &Powers, e: i64, x: usize, y: usize| {
        let v = pw.apply(-e, grp.add_idx(pw.apply(e, x), pw.apply(e, y)));
        grp.sub_idx(grp.sub_idx(v, x), y)
    };
    let beta = |x: usize, y: usize| defect(&pw, 1, x, y);
    let lib_beta = beta_of(f);
    o.check((0..m).all(|x| (0..m).all(|y| lib_beta.get(x, y) == beta(x, y))), || "β table".into());
    let rad = radical(grp, &beta);
    for x in 0..m {
        o.check(beta(x, x) == 0, || format!("β alternating at {x}"));
        for y in 0..m {
            o.check(beta(x, y) == beta(y, x), || format!("β symmetric {x},{y}"));
            o.check(rad.contains(&beta(x, y)), || format!("β img in rad {x},{y}"));
            let f1 = pw.apply(1, x);
            let f1y = pw.apply(1, y);
            o.check(beta(f1, f1y) == pw.apply(1, beta(pw.apply(3, x), y)), || format!("β(fx,fy) {x},{y}"));
            for z in 0..m {
                o.check(beta(grp.add_idx(x, z), y) == grp.add_idx(beta(x, y), beta(z, y)), || {
                    format!("β biadditive {x},{z},{y}")
                });
            }
        }
    }
    for i in -3..=3 {
        for x in 0..m {
            for y in 0..m {
                // β(f^i x, f^i y) = f^i β(f^{3i} x, y)
                o.check(beta(pw.apply(i, x), pw.apply(i, y)) == pw.apply(i, beta(pw.apply(3 * i, x), y)), || {
                    format!("β power shift i={i}")
                });
            }
        }
    }
    for i in -2..=2 {
        for j in -2..=2 {
            for x in 0..m {
                for y in 0..m {
                    o.check(
                        beta(pw.apply(3 * i, x), pw.apply(3 * j, y)) == pw.apply(-3 * (i + j), beta(x, y)),
                        || format!("β cube shift i={i} j={j}"),
                    );
                }
            }
        }
    }
    let mp = match MoufangPair::new(f.clone()) {
        Ok(mp) => mp,
        Err(e) => {
            o.check(false, || format!("MoufangPair::new: {e}"));
            return o;
        }
    };
    for i in -4..=4 {
        let beta_i = |x: usize, y: usize| sum(grp, range(0, i).map(|k| pw.apply(-3 * k, beta(x, y))));
        for x in 0..m {
            for y in 0..m {
                // f^{-i}(f^i x + f^i y) = x + y + β_i(x,y)
                o.check(defect(&pw, i, x, y) == beta_i(x, y), || format!("power defect i={i} x={x} y={y}"));
                // f^{-i}(x+y) = f^{-i}x + f^{-i}y + f^{2i}β_i(x,y)
                let lhs = pw.apply(-i, grp.add_idx(x, y));
                let rhs = sum(grp, [pw.apply(-i, x), pw.apply(-i, y), pw.apply(2 * i, beta_i(x, y))]);
                o.check(lhs == rhs, || format!("power additivity i={i} x={x} y={y}"));
            }
        }
        match moufang_power_pair(&mp, i) {
            Ok(q) => {
                let same = (0..m).all(|x| (0..m).all(|y| q.beta().get(x, y) == beta_i(x, y)));
                o.check(same && q.f().images() == pw.get(i), || format!("power pair {i}"));
            }
            Err(e) => o.check(false, || format!("moufang_power_pair({i}): {e}")),
        }
    }
    // (f^{-1}, f³β)
    let inv = PermTable::new(grp.clone(), pw.get(-1).to_vec()).unwrap();
    let f3beta = BiAddMap::from_fn(grp.clone(), |x, y| pw.apply(3, beta(x, y)));
    o.check(beta_of(&inv) == f3beta, || "β of the inverse".into());
    o.check(MoufangPair::new(inv).is_ok(), || "inverse is Moufang".into());
    // (f³, β)
    let g3 = pw.get(3).to_vec();
    o.check(pair_axioms(grp, &g3, &beta), || "cube pair axioms".into());
    match cube_pair(&mp) {
        Ok(cp) => {
            let v = verify_construction_pair(grp, cp.g(), cp.gamma()).unwrap();
            o.check(v.holds && cp.g().images() == g3.as_slice(), || "cube pair".into());
        }
        Err(e) => o.check(false, || format!("cube_pair: {e}")),
    }
    o
}

/// `T_a^k(z)` by iterated conjugation `z ↦ (az)/a`.
fn conj_k(t: &LoopTable, a: usize, k: i64, mut z: usize) -> usize {
    for _ in 0..k.unsigned_abs() {
        z = if k > 0 {
            t.rdiv(t.mul(a, z), a)
        } else {
            t.ldiv(a, t.mul(z, a))
        };
    }
    z
}

/// Identities of Moufang loops: the two derived laws, conjugation under
/// cubes and its power variants.
pub fn loop_identity_battery(t: &LoopTable, seed: u64) -> Outcome {
    let mut o = Outcome::default();
    let n = t.order();
    let m = |x, y| t.mul(x, y);
    let inv = |x| t.inv(x);
    for [x, y, z] in tuples([n, n, n], seed) {
        // x^{-1}(xy·z) = yx^{-1}·xz
        o.check(m(inv(x), m(m(x, y), z)) == m(m(y, inv(x)), m(x, z)), || format!("M5 at {x},{y},{z}"));
        // (z·yx)x^{-1} = zx·x^{-1}y
        o.check(m(m(z, m(y, x)), inv(x)) == m(m(z, x), m(inv(x), y)), || format!("M6 at {x},{y},{z}"));
    }
    for [a, x, y] in tuples([n, n, n], seed ^ 1) {
        let a3 = t.power(a, 3);
        let c = inv(a3);
        // (c,f) = (a^{-3}, T_a): xc^{-1}·cy = f(f^{-1}x · f^{-1}y)
        let lhs = m(m(x, inv(c)), m(c, y));
        let rhs = conj_k(t, a, 1, m(conj_k(t, a, -1, x), conj_k(t, a, -1, y)));
        o.check(lhs == rhs, || format!("cube pseudo at a={a} x={x} y={y}"));
        // xa^{-3}·a³y = T_a^{-1}(T_a x · T_a y)
        let lhs = m(m(x, c), m(a3, y));
        let rhs = conj_k(t, a, -1, m(conj_k(t, a, 1, x), conj_k(t, a, 1, y)));
        o.check(lhs == rhs, || format!("conjugation law at a={a} x={x} y={y}"));
    }
    for [a, x, y, io, jo] in tuples([n, n, n, 5, 5], seed ^ 2) {
        let (i, j) = (io as i64 - 2, jo as i64 - 2);
        let a3 = t.power(a, 3);
        let p = |e: i64| t.power(a3, e);
        let tk = |k: i64, z: usize| conj_k(t, a, k, z);
        // a^{3i}x·ya^{3j} = a^{3i}·T^{j-i}(T^{i-j}x · T^{i-j}y)·a^{3j}
        let lhs = m(m(p(i), x), m(y, p(j)));
        let u = tk(j - i, m(tk(i - j, x), tk(i - j, y)));
        o.check(lhs == m(m(p(i), u), p(j)), || format!("cube key at a={a} i={i} j={j}"));
        o.check(lhs == m(p(i), m(u, p(j))), || format!("cube key (right) at a={a} i={i} j={j}"));
        let sides = [
            (m(m(p(i), x), m(p(j), y)), tk(i - j, x), tk(i + 2 * j, y), "V1"),
            (lhs, tk(i - j, x), tk(i - j, y), "V2"),
            (m(m(x, p(i)), m(p(j), y)), tk(-2 * i - j, x), tk(i + 2 * j, y), "V3"),
            (m(m(x, p(i)), m(y, p(j))), tk(-2 * i - j, x), tk(i - j, y), "V4"),
        ];
        for (lhs, u, v, name) in sides {
            let inner = m(u, v);
            let first = m(p(i + j), tk(-i - 2 * j, inner));
            let second = m(tk(2 * i + j, inner), p(i + j));
            o.check(lhs == first && lhs == second, || format!("{name} at a={a} x={x} y={y} i={i} j={j}"));
        }
    }
    o
}

/// `T_a` on the embedded subgroup, in its own coordinates.
pub fn restricted_conjugation(t: &LoopTable, emb: &Embedding, a: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; t.order()];
    for (x, &e) in emb.elems.iter().enumerate() {
        pos[e] = x;
    }
    emb.elems.iter().map(|&e| pos[t.rdiv(t.mul(a, e), a)]).collect()
}

fn perm_from(images: Vec<usize>) -> Perm {
    Perm::from_images(images).expect("bijection")
}

/// Direct check of `c f(x)·f(y) = c f(xy)`.
fn pseudo_oracle(t: &LoopTable, c: usize, f: &[usize]) -> bool {
    let n = t.order();
    (0..n).all(|x| (0..n).all(|y| t.mul(t.mul(c, f[x]), f[y]) == t.mul(c, f[t.mul(x, y)])))
}

/// Inner mappings as pseudoautomorphisms, the induced maps `μ_{T_a,x}` and
/// the identities of the induced action on `1 × X`.
pub fn pseudo_battery(t: &LoopTable, spec: &ExtensionSpec, seed: u64) -> Outcome {
    let mut o = Outcome::default();
    let n = t.order();
    for x in 0..n {
        let tx: Vec<usize> = (0..n).map(|a| t.rdiv(t.mul(x, a), x)).collect();
        let c = t.inv(t.power(x, 3));
        let f = perm_from(tx.clone());
        o.check(is_pseudoautomorphism(t, c, &f), || format!("(x^-3, T_x) at {x}"));
        o.check(pseudo_oracle(t, c, &tx), || format!("(x^-3, T_x) oracle at {x}"));
        o.check(is_semiautomorphism(t, &f), || format!("T_{x} semiautomorphism"));
    }
    let pair_count = 24.min(n * n);
    for (k, [x, y]) in tuples([n, n], seed).into_iter().enumerate() {
        if k >= pair_count {
            break;
        }
        let xy = t.mul(x, y);
        // R_{x,y} = R_{xy}^{-1} R_y R_x, L_{x,y} = L_{xy}^{-1} L_x L_y
        let r: Vec<usize> = (0..n).map(|a| t.rdiv(t.mul(t.mul(a, x), y), xy)).collect();
        let l: Vec<usize> = (0..n).map(|a| t.ldiv(xy, t.mul(x, t.mul(y, a)))).collect();
        let cr = t.ldiv(t.mul(x, y), t.mul(y, x));
        let cl = {
            let (xi, yi) = (t.inv(x), t.inv(y));
            t.ldiv(t.mul(yi, xi), t.mul(xi, yi))
        };
        o.check(pseudo_oracle(t, cr, &r), || format!("([y,x], R_(x,y)) at {x},{y}"));
        o.check(pseudo_oracle(t, cl, &l), || format!("([x^-1,y^-1], L_(x,y)) at {x},{y}"));
        o.check(is_semiautomorphism(t, &perm_from(r)), || format!("R_({x},{y}) semiautomorphism"));
        o.check(is_semiautomorphism(t, &perm_from(l)), || format!("L_({x},{y}) semiautomorphism"));
    }

    // induced pseudoautomorphisms from (a^{-3}, T_a)
    for (k, [a, x]) in tuples([n, n], seed ^ 3).into_iter().enumerate() {
        if k >= pair_count {
            break;
        }
        let f: Vec<usize> = (0..n).map(|z| t.rdiv(t.mul(a, z), a)).collect();
        let finv: Vec<usize> = (0..n).map(|z| t.ldiv(a, t.mul(z, a))).collect();
        let c = t.inv(t.power(a, 3));
        let fx = f[x];
        let mu: Vec<usize> = (0..n).map(|y| t.rdiv(finv[t.mul(f[y], fx)], x)).collect();
        o.check(mu_map(t, &perm_from(f.clone()), x).images() == mu.as_slice(), || format!("μ library a={a} x={x}"));
        let comp = t.mul(t.inv(x), finv[t.mul(t.inv(c), t.mul(fx, c))]);
        o.check(pseudo_oracle(t, comp, &mu), || format!("induced pseudo a={a} x={x}"));
        o.check(is_semiautomorphism(t, &perm_from(mu)), || format!("induced semi a={a} x={x}"));
        // L^{-1}_{f³x} f L_{f²x} f^{-1} = f^{-1} R_{fx} f R_x^{-1}
        let f2x = f[fx];
        let f3x = f[f2x];
        for y in 0..n {
            let lhs = t.ldiv(f3x, f[t.mul(f2x, finv[y])]);
            let rhs = finv[t.mul(f[t.rdiv(y, x)], fx)];
            o.check(lhs == rhs, || format!("rewrite identity a={a} x={x} y={y}"));
        }
    }

    // the induced action on X for f = T_a|X
    let grp = spec.pair().group();
    let mx = grp.order();
    let emb = Embedding::of_spec(spec);
    let mut seen = BTreeSet::new();
    for a in 0..n {
        let fimg = restricted_conjugation(t, &emb, a);
        if a < 3 {
            match extract_moufang_permutation(t, &emb, a) {
                Ok(mp) => o.check(mp.f().images() == fimg.as_slice(), || format!("extraction a={a}")),
                Err(e) => o.check(false, || format!("extraction at a={a}: {e}")),
            }
        }
        if !seen.insert(fimg.clone()) {
            continue;
        }
        let pw = Powers::new(&fimg);
        let f = |x: usize| pw.apply(1, x);
        let finv = |x: usize| pw.apply(-1, x);
        let oplus = |x: usize, y: usize| finv(grp.add_idx(f(x), f(y)));
        let mu = |x: usize, y: usize| grp.sub_idx(finv(grp.add_idx(f(y), f(x))), x);
        let mu_tab: Vec<Vec<usize>> = (0..mx).map(|x| (0..mx).map(|y| mu(x, y)).collect()).collect();
        // μ_{T_a, x} on the whole loop restricted to X
        let ta = perm_from((0..n).map(|z| t.rdiv(t.mul(a, z), a)).collect());
        for (x, row) in mu_tab.iter().enumerate() {
            let whole = mu_map(t, &ta, emb.elems[x]);
            o.check((0..mx).all(|y| whole.apply(emb.elems[y]) == emb.elems[row[y]]), || {
                format!("μ on X vs table a={a} x={x}")
            });
        }
        for x in 0..mx {
            let mux = &mu_tab[x];
            o.check(mux[x] == x, || format!("μ_x(x) a={a} x={x}"));
            o.check((0..mx).all(|y| mux[mux[y]] == y), || format!("μ_x involution a={a} x={x}"));
            o.check(mux == &mu_tab[grp.neg_idx(x)], || format!("μ_x = μ_-x a={a} x={x}"));
            // f^{-1} μ_x f = μ_{f²x}
            o.check((0..mx).all(|y| finv(mux[f(y)]) == mu_tab[f(f(x))][y]), || format!("f⁻¹μ_x f a={a} x={x}"));
            for y in 0..mx {
                let s = oplus(x, y);
                o.check(s == grp.add_idx(mu_tab[y][x], y) && s == grp.add_idx(x, mux[y]), || {
                    format!("x⊕y a={a} x={x} y={y}")
                });
                let k = grp.sub_idx(mu_tab[y][x], x);
                o.check((0..mx).all(|z| mu_tab[k][z] == z), || format!("μ_y(x)-x in kernel a={a} x={x} y={y}"));
                for z in 0..mx {
                    o.check(mux[grp.add_idx(y, z)] == grp.add_idx(mux[y], mux[z]), || {
                        format!("μ_x additive a={a} x={x}")
                    });
                    o.check(mux[mu_tab[y][z]] == mu_tab[s][z], || format!("μ_xμ_y = μ_(x⊕y) a={a}"));
                    o.check(mux[mu_tab[y][z]] == mu_tab[grp.add_idx(x, y)][z], || format!("μ action a={a}"));
                }
            }
        }
    }
    o
}
