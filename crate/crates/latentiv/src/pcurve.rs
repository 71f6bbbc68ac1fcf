//! p-values of the instrument tests as a function of the sample size, on
//! simulated data with known instruments.

use latentiv_core::citest::ci_test;
use latentiv_core::synthetic::{generate, Scenario, ScmParams, Setting};
use latentiv_core::{Config, RngStream, TestKind};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveTest {
    YIndepIxGivenX,
    XIndepIyGivenY,
    XIndepYGivenU,
}

impl CurveTest {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveTest::YIndepIxGivenX => "y_indep_ix_given_x",
            CurveTest::XIndepIyGivenY => "x_indep_iy_given_y",
            CurveTest::XIndepYGivenU => "x_indep_y_given_u",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub scenario: &'static str,
    pub setting: &'static str,
    pub n: usize,
    pub replicate: usize,
    pub test: &'static str,
    pub p_value: f64,
}

/// Test used for a setting: G-test for binary data, partial correlation otherwise.
pub fn test_kind_for(setting: Setting) -> TestKind {
    match setting {
        Setting::DiscreteBinary => TestKind::ConditionalMutualInformation,
        Setting::ContinuousGaussian => TestKind::PartialCorrelation,
    }
}

/// Stream of replicate `replicate` at sample size `n`.
pub fn replicate_stream(seed: u64, n: usize, replicate: usize) -> RngStream {
    RngStream::new(seed).derive(n as u64).derive(replicate as u64)
}

/// Rows for every `(n, replicate)` in grid order: `y ⫫ I_x | x`, `x ⫫ I_y | y`,
/// and `x ⫫ y | u` in the confounded scenario.
pub fn run_pcurve(
    scenario: Scenario,
    setting: Setting,
    n_grid: &[usize],
    replicates: usize,
    seed: u64,
    params: &ScmParams,
) -> latentiv_core::Result<Vec<CurveRow>> {
    let cfg = Config { test_kind: test_kind_for(setting), ..Config::default() };
    let mut rows = Vec::new();
    for &n in n_grid {
        for replicate in 0..replicates {
            let s = generate(scenario, setting, n, params, &replicate_stream(seed, n, replicate))?;
            let mut push = |test: CurveTest, p_value: f64| {
                rows.push(CurveRow { scenario: scenario.as_str(), setting: setting.as_str(), n, replicate, test: test.as_str(), p_value })
            };
            push(CurveTest::YIndepIxGivenX, ci_test(&s.y, &s.i_x, &s.x, &cfg)?.p_value);
            push(CurveTest::XIndepIyGivenY, ci_test(&s.x, &s.i_y, &s.y, &cfg)?.p_value);
            if let Some(u) = &s.u {
                push(CurveTest::XIndepYGivenU, ci_test(&s.x, &s.y, u, &cfg)?.p_value);
            }
        }
    }
    Ok(rows)
}

pub fn curve_csv(rows: &[CurveRow]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["scenario", "setting", "n", "replicate", "test", "p_value"])?;
    for r in rows {
        w.write_record([r.scenario.to_string(), r.setting.to_string(), r.n.to_string(), r.replicate.to_string(), r.test.to_string(), r.p_value.to_string()])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
