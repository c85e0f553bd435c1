//! Outcome of an axiom battery.

use std::fmt;

use crate::scalar::Scalar;

/// One failed instance of an identity: the axiom label, the 0-based basis
/// indices it was evaluated at, and the two sides that disagreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(
            f,
            "{} at ({}): lhs [{}] rhs [{}]",
            self.axiom,
            idx.join(", "),
            join(&self.lhs),
            join(&self.rhs)
        )
    }
}

fn join(v: &[Scalar]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.violations.extend(other.violations);
    }

    /// Violations of one axiom label.
    pub fn of(&self, axiom: &str) -> impl Iterator<Item = &Violation> {
        let axiom = axiom.to_owned();
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }

    pub fn failed_axioms(&self) -> Vec<&'static str> {
        let mut names: Vec<&'static str> = Vec::new();
        for v in &self.violations {
            if !names.contains(&v.axiom) {
                names.push(v.axiom);
            }
        }
        names
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "passed");
        }
        writeln!(f, "failed: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Receives `(axiom, indices, lhs, rhs)` for each instance of a check and
/// returns `false` to stop.
pub(crate) type Sink<'a, T> = dyn FnMut(&'static str, &[usize], T, T) -> bool + 'a;

/// Collects violations, optionally stopping at the first one.
pub(crate) struct Recorder {
    pub report: AxiomReport,
    stop_early: bool,
}

impl Recorder {
    pub fn new(stop_early: bool) -> Recorder {
        Recorder {
            report: AxiomReport::default(),
            stop_early,
        }
    }

    /// Records a violation if the sides differ. Returns `false` once the
    /// caller should stop checking.
    pub fn check(&mut self, axiom: &'static str, indices: &[usize], lhs: Vec<Scalar>, rhs: Vec<Scalar>) -> bool {
        if lhs != rhs {
            self.report.violations.push(Violation {
                axiom,
                indices: indices.to_vec(),
                lhs,
                rhs,
            });
            return !self.stop_early;
        }
        true
    }

    pub fn stops_early(&self) -> bool {
        self.stop_early
    }

    pub fn done(&self) -> bool {
        self.stop_early && !self.report.violations.is_empty()
    }

    pub fn finish(self) -> AxiomReport {
        self.report
    }
}
