use std::time::Instant;

use serde::Serialize;

/// One verification failure, with enough data to replay it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    /// The inputs of the failing check.
    pub case: String,
    pub expected: String,
    pub observed: String,
    /// A CLI invocation that reproduces the check.
    pub replay: String,
}

/// Outcome of one suite at one rank. `failures` empty means pass; the
/// records are sorted so reports are deterministic for a given
/// `(suite, n)` apart from the elapsed time.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub checked: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Collects checks and failures while a suite runs.
pub struct Recorder {
    suite: String,
    n: usize,
    checked: u64,
    failures: Vec<Failure>,
    started: Instant,
}

impl Recorder {
    pub fn new(suite: &str, n: usize) -> Self {
        Recorder {
            suite: suite.to_string(),
            n,
            checked: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn check(&mut self, ok: bool, case: &str, expected: &str, observed: &str, replay: &str) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                case: case.to_string(),
                expected: expected.to_string(),
                observed: observed.to_string(),
                replay: replay.to_string(),
            });
        }
    }

    pub fn tally(&mut self, checked: u64, mut failures: Vec<Failure>) {
        self.checked += checked;
        self.failures.append(&mut failures);
    }

    pub fn finish(mut self) -> Report {
        self.failures.sort();
        self.failures.dedup();
        Report {
            suite: self.suite,
            n: self.n,
            checked: self.checked,
            failures: self.failures,
            elapsed_ms: self.started.elapsed().as_millis(),
        }
    }
}
