//! Outcomes of decision procedures, with certificates.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
            Outcome::Inconclusive => 2,
        }
    }

    pub fn from_bool(b: bool) -> Outcome {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

/// A dimension that was computed as part of a decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub quantity: String,
    pub dim: usize,
}

impl Check {
    pub fn new(quantity: impl Into<String>, dim: usize) -> Check {
        Check {
            quantity: quantity.into(),
            dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// every listed quantity vanished
    Vanishing {
        checks: Vec<Check>,
    },
    /// this quantity did not vanish
    Violation {
        check: Check,
        detail: String,
    },
    /// an exact sequence or triangle chain, one line per step
    Chain {
        steps: Vec<String>,
    },
    /// a search ran out of room
    Bound {
        bound: usize,
        note: String,
    },
    /// two independent routes and what they said
    Agreement {
        left: bool,
        right: bool,
        detail: String,
    },
    /// component verdicts
    Parts {
        parts: Vec<NamedVerdict>,
    },
    Note {
        text: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Witness,
    pub provenance: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<Vec<String>>,
}

impl Verdict {
    pub fn new(outcome: Outcome, witness: Witness, route: &str) -> Verdict {
        Verdict {
            outcome,
            witness,
            provenance: vec![route.to_string()],
            probe: None,
        }
    }

    pub fn holds(witness: Witness, route: &str) -> Verdict {
        Verdict::new(Outcome::Holds, witness, route)
    }

    pub fn fails(witness: Witness, route: &str) -> Verdict {
        Verdict::new(Outcome::Fails, witness, route)
    }

    pub fn inconclusive(bound: usize, note: impl Into<String>, route: &str) -> Verdict {
        Verdict::new(Outcome::Inconclusive, Witness::Bound { bound, note: note.into() }, route)
    }

    pub fn is_holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }

    pub fn with_probe(mut self, probe: Vec<String>) -> Verdict {
        self.probe = Some(probe);
        self
    }

    /// Conjunction of named sub-verdicts: Fails if any fails, else
    /// Inconclusive if any is, else Holds.
    pub fn all(parts: Vec<(String, Verdict)>, route: &str) -> Verdict {
        let outcome = if parts.iter().any(|(_, v)| v.outcome == Outcome::Fails) {
            Outcome::Fails
        } else if parts.iter().any(|(_, v)| v.outcome == Outcome::Inconclusive) {
            Outcome::Inconclusive
        } else {
            Outcome::Holds
        };
        Verdict::new(
            outcome,
            Witness::Parts {
                parts: parts.into_iter().map(|(name, verdict)| NamedVerdict { name, verdict }).collect(),
            },
            route,
        )
    }

    /// Looks up a named sub-verdict.
    pub fn part(&self, name: &str) -> Option<&Verdict> {
        match &self.witness {
            Witness::Parts { parts } => parts.iter().find(|p| p.name == name).map(|p| &p.verdict),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_prefers_failure() {
        let h = Verdict::holds(Witness::Note { text: "ok".into() }, "t");
        let f = Verdict::fails(Witness::Note { text: "no".into() }, "t");
        let i = Verdict::inconclusive(3, "ran out", "t");
        assert_eq!(
            Verdict::all(vec![("a".into(), h.clone()), ("b".into(), i.clone())], "t").outcome,
            Outcome::Inconclusive
        );
        assert_eq!(Verdict::all(vec![("a".into(), i), ("b".into(), f)], "t").outcome, Outcome::Fails);
        assert_eq!(Verdict::all(vec![("a".into(), h)], "t").outcome, Outcome::Holds);
    }

    #[test]
    fn serializes_with_tags() {
        let v = Verdict::holds(
            Witness::Vanishing {
                checks: vec![Check::new("hom(M,tau M)", 0)],
            },
            "module",
        );
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"kind\":\"vanishing\""));
        assert!(!s.contains("probe"));
    }
}
