use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::PortraitGraph;
use crate::dynatomic::cycle_count;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum InvalidReason {
    /// More than one vertex has in-degree 1.
    InDegree { vertices: Vec<String> },
    /// Too many cycles of one length.
    CycleCount { length: u32, count: usize, max: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    StronglyAdmissible,
    Admissible,
    NearlyAdmissible,
    Invalid(InvalidReason),
}

impl Classification {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Self::StronglyAdmissible | Self::Admissible)
    }

    /// Admissible or nearly admissible.
    pub fn is_valid(&self) -> bool {
        !matches!(self, Self::Invalid(_))
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::StronglyAdmissible => write!(f, "StronglyAdmissible"),
            Self::Admissible => write!(f, "Admissible"),
            Self::NearlyAdmissible => write!(f, "NearlyAdmissible"),
            Self::Invalid(InvalidReason::InDegree { vertices }) => {
                write!(f, "Invalid(a: in-degree 1 at {})", vertices.join(", "))
            }
            Self::Invalid(InvalidReason::CycleCount { length, count, max }) => {
                write!(f, "Invalid(b: {count} cycles of length {length}, at most {max})")
            }
        }
    }
}

/// R(N), saturating for periods too long to matter.
pub fn max_cycles(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        cycle_count(n)
    }
}

pub fn classify(g: &PortraitGraph) -> Classification {
    classify_with_warnings(g).0
}

/// Classification plus warnings about admissible graphs that no quadratic
/// map can realize.
pub fn classify_with_warnings(g: &PortraitGraph) -> (Classification, Vec<String>) {
    let ones: Vec<String> = g.vertices().filter(|&v| g.in_degree(v) == 1).map(|v| g.name(v).to_string()).collect();
    if ones.len() > 1 {
        return (Classification::Invalid(InvalidReason::InDegree { vertices: ones }), Vec::new());
    }
    let mut by_len: BTreeMap<u32, usize> = BTreeMap::new();
    for c in g.cycles() {
        *by_len.entry(c.len() as u32).or_default() += 1;
    }
    for (&length, &count) in &by_len {
        if length >= 2 && count as u64 > max_cycles(length) {
            let max = max_cycles(length);
            return (Classification::Invalid(InvalidReason::CycleCount { length, count, max }), Vec::new());
        }
    }
    let fixed = by_len.get(&1).copied().unwrap_or(0);
    let mut warnings = Vec::new();
    if fixed > 2 {
        warnings.push(format!("unrealizable: {fixed} fixed points exceeds R(1) = 2"));
    }
    let class = if ones.len() == 1 {
        Classification::NearlyAdmissible
    } else if fixed == 0 || fixed == 2 {
        Classification::StronglyAdmissible
    } else {
        Classification::Admissible
    };
    (class, warnings)
}
