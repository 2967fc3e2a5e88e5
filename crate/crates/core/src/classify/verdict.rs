use serde::Serialize;

use super::{ClassificationReport, ClassifyError, ConformalType, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictCase {
    #[serde(rename = "QI_Forced_StrictParabolic")]
    QiForcedStrictParabolic,
    #[serde(rename = "QI_Forced_Hyperbolic")]
    QiForcedHyperbolic,
    #[serde(rename = "QI_Forced_InfinitePi1")]
    QiForcedInfinitePi1,
    #[serde(rename = "Liminal_CarnotRigidity")]
    LiminalCarnotRigidity,
    #[serde(rename = "Liminal_Undecided")]
    LiminalUndecided,
    Obstructed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub left: String,
    pub right: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub case: VerdictCase,
    pub explanation: String,
    pub matched_invariants: Vec<InvariantCheck>,
}

fn check(name: &str, left: impl ToString, right: impl ToString) -> InvariantCheck {
    let (left, right) = (left.to_string(), right.to_string());
    InvariantCheck {
        name: name.into(),
        equal: left == right,
        left,
        right,
    }
}

fn type_name(t: ConformalType) -> &'static str {
    match t {
        ConformalType::StrictlyParabolic => "StrictlyParabolic",
        ConformalType::LiminalParabolic => "LiminalParabolic",
        ConformalType::Hyperbolic => "Hyperbolic",
    }
}

/// Decides what a quasi-conformal map between the two groups must be.
pub fn qc_implies_qi_verdict(a: &Group, b: &Group) -> Result<Verdict, ClassifyError> {
    Ok(verdict_from_reports(&a.classify()?, &b.classify()?))
}

pub fn verdict_from_reports(a: &ClassificationReport, b: &ClassificationReport) -> Verdict {
    let checks = vec![
        check("Q", a.hausdorff_dim_q, b.hausdorff_dim_q),
        check("N", a.growth_dim_n, b.growth_dim_n),
        check("conformal_type", type_name(a.conformal_type), type_name(b.conformal_type)),
    ];
    let (case, explanation) = if let Some(bad) = checks.iter().find(|c| !c.equal) {
        (
            VerdictCase::Obstructed,
            format!(
                "no quasi-conformal map exists: {} differs ({} vs {})",
                bad.name, bad.left, bad.right
            ),
        )
    } else if a.fundamental_group_infinite || b.fundamental_group_infinite {
        (
            VerdictCase::QiForcedInfinitePi1,
            "a group with infinite fundamental group is involved; every quasi-conformal map is a quasi-isometry".into(),
        )
    } else {
        match a.conformal_type {
            ConformalType::StrictlyParabolic => (
                VerdictCase::QiForcedStrictParabolic,
                "both groups are strictly parabolic; quasi-conformal maps are quasi-isometries".into(),
            ),
            ConformalType::Hyperbolic => (
                VerdictCase::QiForcedHyperbolic,
                "both groups are hyperbolic; quasi-conformal maps are quasi-isometries".into(),
            ),
            ConformalType::LiminalParabolic
                if a.nilpotent && b.nilpotent && a.simply_connected && b.simply_connected =>
            {
                (
                    VerdictCase::LiminalCarnotRigidity,
                    "both groups are liminal, nilpotent and simply connected, hence Carnot; \
                     a quasi-conformal map forces them to be isomorphic and bi-Lipschitz"
                        .into(),
                )
            }
            ConformalType::LiminalParabolic => (
                VerdictCase::LiminalUndecided,
                "liminal parabolic beyond the nilpotent case; no conclusion".into(),
            ),
        }
    };
    Verdict {
        case,
        explanation,
        matched_invariants: checks,
    }
}
