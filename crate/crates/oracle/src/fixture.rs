//! Pinned fixtures: inputs plus expected values as decimal strings.

use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    BigFloatSeries,
    MatrixTaylor,
    ClosedForm,
    SelfConvergence,
}

/// One pinned scalar-derivative expectation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalarFixture {
    pub z_re: f64,
    pub z_im: f64,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    /// ≥ 30 significant decimal digits.
    pub expected_re: String,
    pub expected_im: String,
    pub provenance: Provenance,
    pub digits: usize,
}

/// One pinned matrix expectation; entries row-major as decimal-string pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFixture {
    pub name: String,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub expected: Vec<[String; 2]>,
    pub provenance: Provenance,
    pub digits: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalarFixtureFile {
    pub fixtures: Vec<ScalarFixture>,
}

pub fn save_scalar(path: &Path, fixtures: &[ScalarFixture]) {
    let file = ScalarFixtureFile { fixtures: fixtures.to_vec() };
    std::fs::write(path, serde_json::to_string_pretty(&file).unwrap()).unwrap();
}

pub fn load_scalar(path: &Path) -> Vec<ScalarFixture> {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("cannot read fixture file {}: {e}", path.display()));
    serde_json::from_str::<ScalarFixtureFile>(&text).unwrap().fixtures
}

pub fn save_matrix(path: &Path, fixture: &MatrixFixture) {
    std::fs::write(path, serde_json::to_string_pretty(fixture).unwrap()).unwrap();
}

pub fn load_matrix(path: &Path) -> MatrixFixture {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("cannot read fixture file {}: {e}", path.display()));
    serde_json::from_str(&text).unwrap()
}

impl ScalarFixture {
    pub fn expected_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(parse_f64(&self.expected_re), parse_f64(&self.expected_im))
    }
}

impl MatrixFixture {
    pub fn expected_c64(&self) -> Vec<Vec<num_complex::Complex64>> {
        let mut out = vec![vec![num_complex::Complex64::new(0.0, 0.0); self.n]; self.n];
        for (idx, pair) in self.expected.iter().enumerate() {
            out[idx / self.n][idx % self.n] =
                num_complex::Complex64::new(parse_f64(&pair[0]), parse_f64(&pair[1]));
        }
        out
    }
}

fn parse_f64(s: &str) -> f64 {
    use rug::float::Round;
    crate::bigc::parse_decimal(96, s).to_f64_round(Round::Nearest)
}
