//! Character formulas as integer rows over formal standard-module labels.

use std::collections::{BTreeMap, HashMap};

use crate::cosetlab::{StabilizerData, ThetaCosets};
use crate::klengine::KLTable;
use crate::rootsystem::{classify, Integrality, RootSystem, Weight};
use crate::weylgroup::{WeylElt, WeylGroup};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// A right coset `W_Θ w`, standing for `w^C λ`.
    Coset(usize),
    /// A Weyl group element `z`, standing for `z λ`.
    Element(WeylElt),
}

impl Label {
    pub fn render(self, tc: &ThetaCosets<'_>) -> String {
        match self {
            Label::Coset(c) => tc.label(c),
            Label::Element(w) => tc.group().word_string(w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Regular,
    Singular,
    Verma,
}

/// `ch L(irreducible) = Σ coeff · ch M(standard)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub irreducible: Label,
    pub entries: Vec<(Label, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterFormula {
    pub mode: Mode,
    pub rows: Vec<Row>,
}

impl CharacterFormula {
    pub fn row(&self, irreducible: Label) -> Option<&Row> {
        self.rows.iter().find(|r| r.irreducible == irreducible)
    }
}

/// `[M(standard) : L(irreducible)]` for each irreducible, one row per standard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityRow {
    pub standard: Label,
    pub entries: Vec<(Label, i64)>,
}

/// Fails with the violated condition named, e.g. `λ not regular: β^∨(λ) = 0`.
pub fn require_antidominant_regular(rs: &RootSystem, lambda: &Weight) -> Result<(), Error> {
    for r in rs.positive_roots() {
        if let Integrality::Integer(n) = classify(&rs.pair(r, lambda)?) {
            if n == 0.into() {
                return Err(Error::Precondition(format!(
                    "λ not regular: {}(λ) = 0",
                    rs.coroot_name(r)
                )));
            }
            if n > 0.into() {
                return Err(Error::Precondition(format!(
                    "λ not antidominant: {}(λ) = {n}",
                    rs.coroot_name(r)
                )));
            }
        }
    }
    Ok(())
}

/// Row `C` lists `(D, P^{u,λ}_{CD}(−1))` for the nonzero values; rows and
/// entries follow the coset order.
pub fn regular_formula(tc: &ThetaCosets<'_>, kl: &KLTable) -> Result<CharacterFormula, Error> {
    require_antidominant_regular(tc.root_system(), kl.lambda())?;
    let mut order: Vec<usize> = (0..tc.len()).collect();
    order.sort_by_key(|&c| (tc.length(c), c));
    let rows = order
        .iter()
        .map(|&c| Row {
            irreducible: Label::Coset(c),
            entries: order
                .iter()
                .filter_map(|&d| {
                    let v = kl.poly(c, d).eval_minus_one();
                    (v != 0).then_some((Label::Coset(d), v))
                })
                .collect(),
        })
        .collect();
    Ok(CharacterFormula {
        mode: Mode::Regular,
        rows,
    })
}

/// Inverts the unitriangular matrix of a regular or Verma formula.
pub fn invert_multiplicities(cf: &CharacterFormula) -> Result<Vec<MultiplicityRow>, Error> {
    if cf.mode == Mode::Singular {
        return Err(Error::Precondition(
            "multiplicity inversion needs a regular formula".into(),
        ));
    }
    let pos: HashMap<Label, usize> = cf
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.irreducible, i))
        .collect();
    // m[i]: ch M(label_i) as a combination of irreducibles, keyed by row position.
    let mut m: Vec<BTreeMap<usize, i64>> = Vec::with_capacity(cf.rows.len());
    for (i, row) in cf.rows.iter().enumerate() {
        let mut acc = BTreeMap::from([(i, 1i64)]);
        let mut diag = 0;
        for &(d, a) in &row.entries {
            let j = *pos
                .get(&d)
                .ok_or_else(|| Error::Invariant(format!("standard label {d:?} has no row")))?;
            if j == i {
                diag = a;
            } else if j > i {
                return Err(Error::Invariant(format!(
                    "matrix not unitriangular in row order at row {i}"
                )));
            } else {
                for (&k, &b) in &m[j] {
                    *acc.entry(k).or_insert(0) -= a * b;
                }
            }
        }
        if diag != 1 {
            return Err(Error::Invariant(format!("diagonal entry {diag} at row {i}")));
        }
        acc.retain(|_, v| *v != 0);
        m.push(acc);
    }
    Ok(m
        .into_iter()
        .enumerate()
        .map(|(i, acc)| MultiplicityRow {
            standard: cf.rows[i].irreducible,
            entries: acc
                .into_iter()
                .map(|(k, v)| (cf.rows[k].irreducible, v))
                .collect(),
        })
        .collect())
}

/// Rows indexed by `v ∈ A_Θ^λ`; the entry at `z` sums `P^{u,λ}_{CD}(−1)` over
/// the cosets `D` of the `(W_Θ, W^λ)`-double coset of `z`, with `C = W_Θ v`.
pub fn singular_formula(
    tc: &ThetaCosets<'_>,
    kl: &KLTable,
    stab: &StabilizerData,
) -> Result<CharacterFormula, Error> {
    let rs = tc.root_system();
    if let Some((r, n)) = rs.dominance_witness(kl.lambda())? {
        return Err(Error::Precondition(format!(
            "λ not antidominant: {}(λ) = {n}",
            rs.coroot_name(r)
        )));
    }
    let mut rows = Vec::with_capacity(stab.a_theta_sing.len());
    for &v in &stab.a_theta_sing {
        let c = tc.coset_of(v);
        let mut sums = vec![0i64; stab.a_theta_sing.len()];
        for d in 0..tc.len() {
            sums[stab.group_of[d]] += kl.poly(c, d).eval_minus_one();
        }
        rows.push(Row {
            irreducible: Label::Element(v),
            entries: stab
                .a_theta_sing
                .iter()
                .zip(sums)
                .filter(|(_, s)| *s != 0)
                .map(|(&z, s)| (Label::Element(z), s))
                .collect(),
        });
    }
    Ok(CharacterFormula {
        mode: Mode::Singular,
        rows,
    })
}

/// The regular formula for `Θ = ∅`, labelled by Weyl group elements.
pub fn verma_mode(g: &WeylGroup, lambda: &Weight) -> Result<CharacterFormula, Error> {
    require_antidominant_regular(g.root_system(), lambda)?;
    let tc = ThetaCosets::build(g, &[])?;
    let kl = KLTable::compute(&tc, lambda)?;
    let cf = regular_formula(&tc, &kl)?;
    let el = |l: Label| match l {
        Label::Coset(c) => Label::Element(tc.longest(c)),
        e => e,
    };
    Ok(CharacterFormula {
        mode: Mode::Verma,
        rows: cf
            .rows
            .into_iter()
            .map(|r| Row {
                irreducible: el(r.irreducible),
                entries: r.entries.into_iter().map(|(l, a)| (el(l), a)).collect(),
            })
            .collect(),
    })
}
