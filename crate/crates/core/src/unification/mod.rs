//! Unification type of finite instances: solvability, the core every unifier
//! factors through, the classification into unitary, finitary and nullary
//! with a certificate, the null patterns and the unifier families they carry.

mod core;
mod generality;
mod patterns;
mod witness;

use std::fmt;

pub use self::core::{demorgan_core, kleene_core, Core};
pub use generality::{enumerate_unifiers_bounded, more_general, projective_domains, UNIFIER_BOUND_LIMIT};
pub use patterns::{find_null_pattern, verify_null_pattern, Family};
pub use witness::{inv_closure, pattern_instance, witness_family, WitnessFamily, MAX_WITNESS_N, MAX_WITNESS_N_M2};

pub use crate::projectivity::{Structure, Variety};

use crate::error::{Error, Result};
use crate::involutive::{InvMorphism, InvPoset};
use crate::order::{lattice_report, MonotoneMap, Poset};
use crate::projectivity::{condition_report, ConditionReport};

/// A unifier: a morphism from the dual of a finite projective algebra into the instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unifier {
    Plain(MonotoneMap),
    Involutive(InvMorphism),
}

impl Unifier {
    pub fn map(&self) -> &[usize] {
        match self {
            Unifier::Plain(f) => f.map(),
            Unifier::Involutive(f) => f.map(),
        }
    }

    pub fn domain(&self) -> Structure {
        match self {
            Unifier::Plain(f) => Structure::Plain(f.dom().clone()),
            Unifier::Involutive(f) => Structure::Involutive(f.dom().clone()),
        }
    }

    pub fn codomain(&self) -> Structure {
        match self {
            Unifier::Plain(f) => Structure::Plain(f.cod().clone()),
            Unifier::Involutive(f) => Structure::Involutive(f.cod().clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnifType {
    Unitary,
    Finitary,
    Nullary,
}

impl UnifType {
    pub fn tag(self) -> &'static str {
        match self {
            UnifType::Unitary => "unitary",
            UnifType::Finitary => "finitary",
            UnifType::Nullary => "nullary",
        }
    }
}

impl fmt::Display for UnifType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Evidence for a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A most general unifier.
    MostGeneral(Unifier),
    /// A complete set of pairwise incomparable unifiers.
    MuSet(Vec<Unifier>),
    /// A null pattern, its tuple indexing `within`: the instance for lattices, the core otherwise.
    NullPattern { family: Family, tuple: Vec<usize>, within: Structure },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnifClassification {
    pub solvable: bool,
    pub utype: Option<UnifType>,
    pub certificate: Option<Certificate>,
    pub core: Option<Core>,
}

/// Whether the instance has a unifier at all: a nonempty poset, or a fixed point.
pub fn is_solvable(s: &Structure, variety: Variety) -> Result<bool> {
    s.expect(variety)?;
    Ok(match s {
        Structure::Plain(p) => !p.is_empty(),
        Structure::Involutive(q) => !q.fixed_points().is_empty(),
    })
}

/// The core of an involutive instance for `variety`.
pub fn core_of(q: &InvPoset, variety: Variety) -> Result<Core> {
    match variety {
        Variety::Kleene => Ok(kleene_core(q)),
        Variety::DeMorgan => Ok(demorgan_core(q)),
        Variety::Bdl => Err(Error::VarietyMismatch("lattice instances have no core".into())),
    }
}

fn is_lattice(p: &Poset) -> bool {
    lattice_report(p).is_nonempty_lattice
}

fn good(r: &ConditionReport, variety: Variety) -> bool {
    match variety {
        Variety::Kleene => r.k1.holds() && r.m3.holds(),
        _ => r.m1.holds() && r.m2.holds() && r.m3.holds(),
    }
}

/// Intervals `[x, i(x)]` of an involutive poset, one per `x ≤ i(x)`.
fn half_intervals(c: &InvPoset) -> impl Iterator<Item = (usize, InvPoset)> + '_ {
    c.lower_half().into_iter().map(move |x| {
        let sel = c.base().interval(x, c.i(x));
        (x, c.induced(&sel).expect("intervals [x, i(x)] are inv-closed"))
    })
}

/// Candidate minimal complete set: `[x, y] ↪ P` for `x` minimal and `y` maximal
/// in the lattice case, `[x, i(x)] ↪ Q` over the core for `x` minimal in the
/// core otherwise. Complete exactly when the instance is finitary.
pub fn mu_set(s: &Structure, variety: Variety) -> Result<Vec<Unifier>> {
    s.expect(variety)?;
    match s {
        Structure::Plain(p) => {
            let mut out = Vec::new();
            for x in p.minimals() {
                for y in p.maximals().into_iter().filter(|&y| p.le(x, y)) {
                    let sel = p.interval(x, y);
                    out.push(Unifier::Plain(MonotoneMap::new(&p.induced(&sel), p, sel)?));
                }
            }
            Ok(out)
        }
        Structure::Involutive(q) => {
            let core = core_of(q, variety)?;
            let c = core.structure();
            c.base()
                .minimals()
                .into_iter()
                .map(|x| {
                    let sel = c.base().interval(x, c.i(x));
                    let dom = c.induced(&sel)?;
                    let map = sel.iter().map(|&z| core.carrier()[z]).collect();
                    Ok(Unifier::Involutive(InvMorphism::new(&dom, q, map)?))
                })
                .collect()
        }
    }
}

/// Classifies the unification type of an instance.
pub fn classify(s: &Structure, variety: Variety) -> Result<UnifClassification> {
    if !is_solvable(s, variety)? {
        return Ok(UnifClassification { solvable: false, utype: None, certificate: None, core: None });
    }
    let (utype, certificate, core) = match s {
        Structure::Plain(p) => {
            if is_lattice(p) {
                (UnifType::Unitary, Certificate::MostGeneral(Unifier::Plain(MonotoneMap::identity(p))), None)
            } else if p.relation().into_iter().all(|(x, y)| is_lattice(&p.induced(&p.interval(x, y)))) {
                (UnifType::Finitary, Certificate::MuSet(mu_set(s, variety)?), None)
            } else {
                (UnifType::Nullary, null_certificate(s.clone(), Family::Bdl)?, None)
            }
        }
        Structure::Involutive(q) => {
            let core = core_of(q, variety)?;
            let c = core.structure();
            let report = condition_report(c);
            let intervals: Vec<ConditionReport> = half_intervals(c).map(|(_, sub)| condition_report(&sub)).collect();
            let base_fails = match variety {
                Variety::Kleene => !report.k1.holds(),
                _ => !report.m1.holds(),
            };
            if good(&report, variety) {
                (UnifType::Unitary, Certificate::MostGeneral(Unifier::Involutive(core.inclusion())), Some(core))
            } else if base_fails && intervals.iter().all(|r| good(r, variety)) {
                (UnifType::Finitary, Certificate::MuSet(mu_set(s, variety)?), Some(core))
            } else {
                let family = match variety {
                    Variety::Kleene if intervals.iter().any(|r| !r.k1.holds()) => Family::K1,
                    Variety::Kleene => Family::K2,
                    _ if intervals.iter().any(|r| !r.m1.holds()) => Family::M1,
                    _ if intervals.iter().any(|r| !r.m2.holds()) => Family::M2,
                    _ => Family::M3,
                };
                let cert = null_certificate(Structure::Involutive(c.clone()), family)?;
                (UnifType::Nullary, cert, Some(core))
            }
        }
    };
    Ok(UnifClassification { solvable: true, utype: Some(utype), certificate: Some(certificate), core })
}

fn null_certificate(within: Structure, family: Family) -> Result<Certificate> {
    let tuple = find_null_pattern(&within, family)?
        .ok_or_else(|| Error::Internal(format!("nullary instance without a {family} pattern")))?;
    Ok(Certificate::NullPattern { family, tuple, within })
}
