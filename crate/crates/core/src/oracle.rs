//! Slow, independent re-derivations used by tests and `verify`.
//!
//! Nothing here reuses the production algorithms it checks: Bruhat order
//! comes from the subword property, classical Kazhdan-Lusztig polynomials
//! from R-polynomials and the bar-invariance solve, and cosets from set
//! operations over all of `W`.

use std::collections::{BTreeSet, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::cosetlab::{stabilizer_data, IntegralData, IntegralModel, ThetaCosets};
use crate::hecke::{restrict_lambda, t_alpha, t_alpha_model, HeckeElt};
use crate::klengine::{
    descent_independence, kl_classical_relation_check, phi_direct, structural_violations, KLTable,
};
use crate::laurent::LaurentPoly;
use crate::rootsystem::{CorootValue, Weight};
use crate::weylgroup::{WeylElt, WeylGroup};
use crate::Error;

pub const SUBWORD_MAX_LENGTH: usize = 12;
pub const CLASSICAL_MAX_ORDER: usize = 1152;

/// `v ≤ w` iff some subword of a fixed reduced word of `w` is a reduced word of `v`.
pub fn bruhat_subword(g: &WeylGroup, v: WeylElt, w: WeylElt) -> Result<bool, Error> {
    let word = g.word(w);
    if word.len() > SUBWORD_MAX_LENGTH {
        return Err(Error::Precondition(format!(
            "subword oracle needs ℓ(w) ≤ {SUBWORD_MAX_LENGTH}, got {}",
            word.len()
        )));
    }
    let target = g.length(v);
    for mask in 0u32..(1 << word.len()) {
        if mask.count_ones() as usize != target {
            continue;
        }
        let mut x = g.identity();
        let mut reduced = true;
        for (k, &i) in word.iter().enumerate() {
            if mask & (1 << k) != 0 {
                let y = g.right_simple(x, i as usize);
                if g.length(y) < g.length(x) {
                    reduced = false;
                    break;
                }
                x = y;
            }
        }
        if reduced && x == v {
            return Ok(true);
        }
    }
    Ok(false)
}

type Dense = Vec<i64>;

fn dense_mul(a: &[i64], b: &[i64]) -> Dense {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn dense_add_into(acc: &mut Dense, x: &[i64]) {
    if acc.len() < x.len() {
        acc.resize(x.len(), 0);
    }
    for (a, b) in acc.iter_mut().zip(x) {
        *a += b;
    }
}

/// Classical `P_{v,w}` indexed by group ids.
pub struct ClassicalKl {
    order: usize,
    polys: Vec<Option<Dense>>,
}

impl ClassicalKl {
    /// `P_{v,w}`, or `None` when `v ≰ w`.
    pub fn get(&self, v: WeylElt, w: WeylElt) -> Option<LaurentPoly> {
        self.polys[v.id() * self.order + w.id()]
            .as_ref()
            .map(|d| LaurentPoly::from_terms(d.iter().enumerate().map(|(k, &c)| (k as i32, c))))
    }
}

/// R-polynomials by the descent recursion, then `P` from
/// `q^{ℓ(w)−ℓ(x)} P_{x,w}(q^{−1}) − P_{x,w}(q) = Σ_{x<y≤w} R_{x,y} P_{y,w}`
/// with the degree bound `deg P ≤ (ℓ(w)−ℓ(x)−1)/2`.
pub fn classical_kl(g: &WeylGroup) -> Result<ClassicalKl, Error> {
    let n = g.order();
    if n > CLASSICAL_MAX_ORDER {
        return Err(Error::Precondition(format!(
            "classical oracle needs |W| ≤ {CLASSICAL_MAX_ORDER}, got {n}"
        )));
    }
    let mut r: Vec<Option<Dense>> = vec![None; n * n];
    r[0] = Some(vec![1]);
    for w in g.elements().skip(1) {
        let s = g.descents_right(w)[0];
        let ws = g.right_simple(w, s);
        for x in g.elements() {
            let xs = g.right_simple(x, s);
            let val = if g.length(xs) < g.length(x) {
                r[xs.id() * n + ws.id()].clone()
            } else {
                let a = r[x.id() * n + ws.id()].as_ref().map(|p| dense_mul(p, &[-1, 1]));
                let b = r[xs.id() * n + ws.id()].as_ref().map(|p| dense_mul(p, &[0, 1]));
                match (a, b) {
                    (None, None) => None,
                    (Some(p), None) | (None, Some(p)) => Some(p),
                    (Some(mut p), Some(q)) => {
                        dense_add_into(&mut p, &q);
                        Some(p)
                    }
                }
            };
            r[x.id() * n + w.id()] = val.filter(|p| p.iter().any(|&c| c != 0));
        }
    }
    let mut polys: Vec<Option<Dense>> = vec![None; n * n];
    for w in g.elements() {
        let mut below: Vec<WeylElt> = g
            .elements()
            .filter(|x| r[x.id() * n + w.id()].is_some())
            .collect();
        below.sort_by_key(|&x| std::cmp::Reverse(g.length(x)));
        polys[w.id() * n + w.id()] = Some(vec![1]);
        for &x in &below {
            if x == w {
                continue;
            }
            let mut sum: Dense = vec![0];
            for &y in &below {
                if y == x || g.length(y) <= g.length(x) {
                    continue;
                }
                if let (Some(rxy), Some(pyw)) =
                    (&r[x.id() * n + y.id()], &polys[y.id() * n + w.id()])
                {
                    dense_add_into(&mut sum, &dense_mul(rxy, pyw));
                }
            }
            let d = g.length(w) - g.length(x);
            let bound = (d - 1) / 2;
            let mut p: Dense = (0..=bound).map(|k| -sum.get(k).copied().unwrap_or(0)).collect();
            while p.len() > 1 && p.last() == Some(&0) {
                p.pop();
            }
            polys[x.id() * n + w.id()] = Some(p);
        }
    }
    Ok(ClassicalKl { order: n, polys })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub scope: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub checks: Vec<Check>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, name: &str, scope: impl Into<String>, counterexample: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            scope: scope.into(),
            passed: counterexample.is_none(),
            counterexample,
        });
    }

    pub fn extend(&mut self, other: OracleReport) {
        self.checks.extend(other.checks);
    }
}

fn sorted(mut v: Vec<WeylElt>) -> Vec<WeylElt> {
    v.sort();
    v.dedup();
    v
}

fn names(g: &WeylGroup, v: &[WeylElt]) -> String {
    v.iter().map(|&w| g.word_string(w)).collect::<Vec<_>>().join(", ")
}

/// Definition-level recomputation of cosets, cross-sections, double cosets
/// and integral models, diffed against the production structures.
pub fn recompute_cosets(
    tc: &ThetaCosets<'_>,
    idata: &IntegralData,
    models: &[IntegralModel],
) -> Result<OracleReport, Error> {
    let g = tc.group();
    let rs = g.root_system();
    let n = rs.rank();
    let mut rep = OracleReport::default();
    let scope = format!("{} Θ={:?} λ=({})", rs.name(), tc.theta(), idata.lambda);

    // W_Θ as the pointwise stabilizer of the fundamental weights off Θ.
    let mut w_theta = Vec::new();
    for w in g.elements() {
        let mut fixes = true;
        for j in (0..n).filter(|j| !tc.theta().contains(j)) {
            let mut e = vec![0; n];
            e[j] = 1;
            let fw = Weight::from_integers(&e);
            if g.act_on_weight(w, &fw)? != fw {
                fixes = false;
                break;
            }
        }
        if fixes {
            w_theta.push(w);
        }
    }
    rep.push(
        "parabolic-subgroup",
        &scope,
        (w_theta != tc.w_theta()).then(|| format!("brute W_Θ = {{{}}}", names(g, &w_theta))),
    );

    let mut bad = None;
    if tc.len() * w_theta.len() != g.order() {
        bad = Some(format!("{} cosets × |W_Θ| = {} ≠ |W|", tc.len(), w_theta.len()));
    }
    for (c, coset) in tc.cosets().iter().enumerate() {
        let members = sorted(w_theta.iter().map(|&x| g.mul(x, coset.longest)).collect());
        let longest = *members.iter().max_by_key(|&&x| g.length(x)).unwrap();
        let shortest = *members.iter().min_by_key(|&&x| g.length(x)).unwrap();
        let inv = g.inverse(coset.longest);
        let inv_s = g.inverse(coset.shortest);
        let long_ok = tc
            .theta()
            .iter()
            .all(|&i| !rs.is_positive(g.act_on_root(inv, i)));
        let short_ok = tc
            .theta()
            .iter()
            .all(|&i| rs.is_positive(g.act_on_root(inv_s, i)));
        if members != coset.members
            || longest != coset.longest
            || shortest != coset.shortest
            || !long_ok
            || !short_ok
        {
            bad.get_or_insert(format!("coset {c} ({})", tc.label(c)));
        }
    }
    rep.push("right-cosets", &scope, bad);

    // W_λ = {w : wλ − λ ∈ ZΣ}, with wλ − λ accumulated in root coordinates
    // along a reduced word: s_i μ = μ − α_i^∨(μ) α_i.
    let mut w_lambda = Vec::new();
    for w in g.elements() {
        let k = idata.lambda.n_transcendentals();
        let mut diff = vec![CorootValue::zero(k); n];
        let mut mu = idata.lambda.clone();
        for &i in g.word(w).iter().rev() {
            let i = i as usize;
            diff[i] = &diff[i] - mu.coord(i);
            mu = mu.simple_reflect(rs, i);
        }
        let in_lattice = diff.iter().all(|c| {
            c.transcendental.iter().all(num_traits::Zero::is_zero) && c.rational.is_integer()
        });
        if in_lattice {
            w_lambda.push(w);
        }
    }
    let mut prod = w_lambda.clone();
    prod.sort();
    let mut prod_sub: Vec<WeylElt> = idata.w_lambda.elements().to_vec();
    prod_sub.sort();
    rep.push(
        "integral-weyl-group",
        &scope,
        (prod != prod_sub).then(|| format!("brute W_λ = {{{}}}", names(g, &prod))),
    );

    let a_lambda: Vec<WeylElt> = g
        .elements()
        .filter(|&u| {
            w_lambda
                .iter()
                .all(|&v| v == g.identity() || g.length(g.mul(u, v)) > g.length(u))
        })
        .collect();
    let mut msg = None;
    if a_lambda != idata.a_lambda {
        msg = Some(format!("brute A_λ = {{{}}}", names(g, &a_lambda)));
    } else if a_lambda.len() * w_lambda.len() != g.order() {
        msg = Some("|A_λ|·|W_λ| ≠ |W|".into());
    }
    rep.push("cross-section-a-lambda", &scope, msg);

    let mut seen: HashSet<WeylElt> = HashSet::new();
    let mut reps = Vec::new();
    let mut partition: Vec<Vec<usize>> = Vec::new();
    for w in g.elements() {
        if seen.contains(&w) {
            continue;
        }
        let mut dc = BTreeSet::new();
        for &x in &w_theta {
            for &y in &w_lambda {
                dc.insert(g.mul(g.mul(x, w), y));
            }
        }
        let min_len = dc.iter().map(|&x| g.length(x)).min().unwrap();
        let mins: Vec<WeylElt> = dc.iter().copied().filter(|&x| g.length(x) == min_len).collect();
        if mins.len() != 1 {
            rep.push(
                "double-coset-minimum",
                &scope,
                Some(format!("double coset of {} has {} shortest elements", g.word_string(w), mins.len())),
            );
        }
        reps.push(mins[0]);
        let cs: BTreeSet<usize> = dc.iter().map(|&x| tc.coset_of(x)).collect();
        partition.push(cs.into_iter().collect());
        seen.extend(dc);
    }
    let reps = sorted(reps);
    rep.push(
        "cross-section-a-theta-lambda",
        &scope,
        (reps != idata.a_theta_lambda).then(|| format!("brute A_Θ,λ = {{{}}}", names(g, &reps))),
    );
    let mut prod_part = idata.double_cosets.clone();
    prod_part.sort();
    partition.sort();
    rep.push(
        "double-cosets",
        &scope,
        (prod_part != partition).then(|| format!("brute partition {partition:?}")),
    );

    let mut bad = None;
    for m in models {
        let u = m.u;
        let uinv = g.inverse(u);
        let expected: Vec<WeylElt> = sorted(
            prod_sub
                .iter()
                .copied()
                .filter(|&v| w_theta.contains(&g.mul(g.mul(u, v), uinv)))
                .collect(),
        );
        let gens: Vec<WeylElt> = m.theta_roots().iter().map(|&r| g.reflection(r)).collect();
        let generated = g.generated_subgroup(&gens);
        if expected != generated {
            bad.get_or_insert(format!("Θ(u,λ) for u = {}", g.word_string(u)));
        }
        let mut images = BTreeSet::new();
        for e in 0..m.len() {
            let img: BTreeSet<usize> = m
                .coset(e)
                .members
                .iter()
                .map(|&v| tc.coset_of(g.mul(u, v)))
                .collect();
            if img.len() != 1 || *img.iter().next().unwrap() != m.ind(e) {
                bad.get_or_insert(format!("ind_λ at model coset {e} of u = {}", g.word_string(u)));
            }
            images.insert(m.ind(e));
        }
        if images.len() != m.len() {
            bad.get_or_insert(format!("ind_λ not injective for u = {}", g.word_string(u)));
        }
    }
    rep.push("integral-models", &scope, bad);
    Ok(rep)
}

/// Every check that applies to `(Θ, λ)`: oracle diffs, both KL paths,
/// structural invariants, descent independence, the first commuting square
/// and (for `Θ = ∅`, integral regular `λ`) the classical relation.
pub fn verify_suite(tc: &ThetaCosets<'_>, lambda: &Weight) -> Result<OracleReport, Error> {
    let g = tc.group();
    let rs = g.root_system();
    let scope = format!("{} Θ={:?} λ=({})", rs.name(), tc.theta(), lambda);
    let mut rep = OracleReport::default();

    let mut bad = None;
    let bruhat_scope;
    if g.order() <= 48 {
        bruhat_scope = format!("{} exhaustive", rs.name());
        'outer: for v in g.elements() {
            for w in g.elements() {
                if g.bruhat_leq(v, w) != bruhat_subword(g, v, w)? {
                    bad = Some(format!("v = {}, w = {}", g.word_string(v), g.word_string(w)));
                    break 'outer;
                }
            }
        }
    } else {
        bruhat_scope = format!("{} 10^4 seeded random pairs", rs.name());
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let small: Vec<WeylElt> = g
            .elements()
            .filter(|&w| g.length(w) <= SUBWORD_MAX_LENGTH)
            .collect();
        for _ in 0..10_000 {
            let v = WeylElt::from_id(rng.gen_range(0..g.order()));
            let w = small[rng.gen_range(0..small.len())];
            if g.bruhat_leq(v, w) != bruhat_subword(g, v, w)? {
                bad = Some(format!("v = {}, w = {}", g.word_string(v), g.word_string(w)));
                break;
            }
        }
    }
    rep.push("bruhat-vs-subword", bruhat_scope, bad);

    let kl = KLTable::compute(tc, lambda)?;
    if g.order() <= CLASSICAL_MAX_ORDER {
        rep.extend(recompute_cosets(tc, &kl.idata, &kl.models)?);
    }

    let direct = phi_direct(tc, lambda)?;
    let diff = (0..tc.len()).find(|&c| direct[c] != kl.phi[c]);
    rep.push(
        "path-equivalence",
        &scope,
        diff.map(|c| format!("coset {}: transport {:?} vs direct {:?}", tc.label(c), kl.phi[c], direct[c])),
    );

    let v = structural_violations(tc, &kl);
    rep.push("kl-structure", &scope, v.first().cloned());

    let mut findings = None;
    for (m, b) in kl.models.iter().zip(&kl.bases) {
        let f = descent_independence(g, m, b)?;
        if let Some(x) = f.first() {
            findings.get_or_insert(format!(
                "u = {}, model coset {}, simple root {}",
                g.word_string(m.u),
                m.label(g, x.coset),
                rs.root_name(m.pi_lambda()[x.simple])
            ));
        }
    }
    rep.push("descent-independence", &scope, findings);

    rep.push("restriction-square", &scope, restriction_square(tc, &kl)?);

    let flags = rs.weight_flags(lambda)?;
    if tc.theta().is_empty() && flags.integral && flags.regular && g.order() <= 384 {
        let r = kl_classical_relation_check(g, lambda)?;
        rep.push(
            "classical-relation",
            format!("{} ({} comparable pairs)", rs.name(), r.pairs_compared),
            r.mismatch.map(|(w, v, a, b)| {
                format!("P[{}, {}]: {a} vs {b}", g.word_string(w), g.word_string(v))
            }),
        );
    }

    if rs.dominance_witness(lambda)?.is_none() {
        let st = stabilizer_data(tc, lambda);
        rep.push("stabilizer", &scope, st.err().map(|e| e.to_string()));
    }
    Ok(rep)
}

/// `(T_α δ_C)|_λ = T_α^{u,λ}(δ_C|_λ)` for every `α ∈ Π ∩ Π_λ` and every `C`.
pub fn restriction_square(tc: &ThetaCosets<'_>, kl: &KLTable) -> Result<Option<String>, Error> {
    let g = tc.group();
    let sp = crate::hecke::global_space(tc);
    for i in 0..g.rank() {
        if !kl.idata.pi_lambda().contains(&i) {
            continue;
        }
        for c in 0..tc.len() {
            let d = HeckeElt::basis(sp.clone(), c);
            let lhs = restrict_lambda(tc, &kl.idata, &kl.models, &t_alpha(tc, i, &d)?)?;
            let parts = restrict_lambda(tc, &kl.idata, &kl.models, &d)?;
            for (k, m) in kl.models.iter().enumerate() {
                if t_alpha_model(m, i, &parts[k])? != lhs[k] {
                    return Ok(Some(format!(
                        "α = {}, C = {}",
                        g.root_system().root_name(i),
                        tc.label(c)
                    )));
                }
            }
        }
    }
    Ok(None)
}
