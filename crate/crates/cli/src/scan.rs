//! The five run modes. Each returns a report with a deterministic body
//! (CSV or function document), human-readable summary lines, an optional
//! chart, and a pass verdict that drives the process exit code.

use std::sync::Arc;

use num_complex::Complex64;

use lfbesov::besov::{besov_norm, delta_j, lp_decompose};
use lfbesov::error::Error as CoreError;
use lfbesov::field::{FieldElement, FieldParams};
use lfbesov::fourier::{fourier, inverse_fourier, naive_fourier};
use lfbesov::operators::{dilate, dilation_bound_check, localization_bound_check, localization_centers};
use lfbesov::step::{BallSpec, Side, StepFunction};
use lfbesov::textio::{emit_function, parse_function_doc};

use crate::config::{Resolved, Source};
use crate::error::{io_err, CliError, CliResult};
use crate::fit::fit_exponent;
use crate::plot::Series;
use crate::random::random_test_function;

/// Shared tolerance for the internal consistency checks.
const TOL: f64 = 1e-9;

/// How flat a scan curve must stay: the fitted growth exponent of the
/// normalized ratio may not exceed this. The verdict is about trend, not
/// magnitude, so constants of any size pass as long as they stay constants.
const FLAT_SLOPE: f64 = 0.01;

pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

pub struct ScanReport {
    pub summary: Vec<String>,
    pub body: String,
    pub chart: Option<Chart>,
    pub pass: bool,
}

impl ScanReport {
    fn new(body: String) -> ScanReport {
        ScanReport {
            summary: Vec::new(),
            body,
            chart: None,
            pass: true,
        }
    }

    fn line(&mut self, text: impl Into<String>) {
        self.summary.push(text.into());
    }
}

/// Materializes the function named by the configuration. For documents the
/// field header wins, but it must agree with any explicit field flags.
pub fn load_function(cfg: &Resolved) -> CliResult<(Arc<FieldParams>, StepFunction)> {
    match &cfg.source {
        Source::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            let doc = parse_function_doc(&text)?;
            if let Some(p) = cfg.p_given {
                if p != doc.params.p() {
                    return Err(CliError::Config(format!(
                        "{} declares p = {}, flags say p = {}",
                        path.display(),
                        doc.params.p(),
                        p
                    )));
                }
            }
            if let Some(c) = cfg.c_given {
                if c != doc.params.c() {
                    return Err(CliError::Config(format!(
                        "{} declares c = {}, flags say c = {}",
                        path.display(),
                        doc.params.c(),
                        c
                    )));
                }
            }
            let f = doc.to_step()?;
            Ok((doc.params, f))
        }
        Source::Builtin(name) => {
            let params = cfg.field_params()?;
            let f = builtin_function(&params, name)?;
            Ok((params, f))
        }
        Source::Random {
            seed,
            num_terms,
            max_level,
        } => {
            let params = cfg.field_params()?;
            let f = random_test_function(&params, *seed, *num_terms, *max_level)?;
            Ok((params, f))
        }
    }
}

pub fn builtin_function(params: &Arc<FieldParams>, name: &str) -> CliResult<StepFunction> {
    let ball = if name == "unit-ball" {
        BallSpec::new(FieldElement::ZERO, 0)
    } else if let Some(level) = name.strip_prefix("ball@") {
        let level: i32 = level
            .parse()
            .map_err(|_| CliError::Config(format!("bad ball level `{level}`")))?;
        BallSpec::new(FieldElement::ZERO, level)
    } else {
        return Err(CliError::Config(format!(
            "unknown builtin `{name}`; expected unit-ball or ball@<level>"
        )));
    };
    Ok(StepFunction::indicator(params.clone(), Side::Spatial, &ball)?)
}

/// Transform the input function and emit the result as a function document.
/// Spatial input goes forward, frequency input goes back.
pub fn run_fourier(cfg: &Resolved) -> CliResult<ScanReport> {
    let (_, f) = load_function(cfg)?;
    let forward = f.side() == Side::Spatial;
    let g = if forward {
        fourier(&f)?
    } else {
        inverse_fourier(&f)?
    };
    let back = if forward {
        inverse_fourier(&g)?
    } else {
        fourier(&g)?
    };
    let roundtrip = back.max_abs_diff(&f)?;
    let scale = f.lr_norm(2.0).max(1.0);
    let plancherel = (f.lr_norm(2.0) - g.lr_norm(2.0)).abs() / scale;
    let mut report = ScanReport::new(emit_function(&g));
    report.line(format!(
        "direction = {}",
        if forward { "forward" } else { "inverse" }
    ));
    report.line(format!(
        "in: resolution = {}, support = {}, cells = {}",
        f.resolution(),
        f.support_bound(),
        f.values().len()
    ));
    report.line(format!(
        "out: resolution = {}, support = {}, cells = {}",
        g.resolution(),
        g.support_bound(),
        g.values().len()
    ));
    report.line(format!("roundtrip_max_err = {roundtrip}"));
    report.line(format!("plancherel_rel_err = {plancherel}"));
    report.pass = roundtrip <= TOL && plancherel <= TOL;
    report.line(format!("pass = {}", report.pass));
    Ok(report)
}

/// Block norms of the dyadic-style decomposition, one row per band, plus
/// the assembled norm.
pub fn run_besov_norm(cfg: &Resolved) -> CliResult<ScanReport> {
    let (params, f) = load_function(cfg)?;
    let bp = cfg.besov_params()?;
    let q = params.qf();
    let dec = lp_decompose(&f)?;
    let mut csv = String::from("j,block_norm,weighted_norm\n");
    let mut series = Series {
        label: format!("q^(sj) block norm, s={}", bp.s()),
        points: Vec::new(),
    };
    for (j, block) in dec.blocks.iter().enumerate() {
        let block_norm = block.lr_norm(bp.r());
        let weighted = q.powf(bp.s() * j as f64) * block_norm;
        csv.push_str(&format!("{j},{block_norm},{weighted}\n"));
        series.points.push((j as f64, weighted));
    }
    let norm = besov_norm(&f, &bp)?;
    let mut report = ScanReport::new(csv);
    report.line(format!("cutoff = {}", dec.cutoff()));
    report.line(format!("besov_norm = {norm}"));
    report.chart = Some(Chart {
        title: format!("band norms, s={} r={} t={}", bp.s(), bp.r(), bp.t()),
        x_label: "j".into(),
        y_label: "weighted block norm".into(),
        series: vec![series],
    });
    Ok(report)
}

/// Norm growth under repeated dilation, row per step, checked against the
/// envelope k^(1/t) q^(k(s-1/r)). Passes when the normalized ratio shows no
/// positive trend.
pub fn run_dilate_scan(cfg: &Resolved) -> CliResult<ScanReport> {
    let (params, f) = load_function(cfg)?;
    let bp = cfg.besov_params()?;
    let q = params.qf();
    let mut csv = String::from("k,norm_in,norm_out,ratio,bound_shape,ratio_over_bound\n");
    let mut ratio_points = Vec::new();
    let mut normalized_points = Vec::new();
    let mut log_ratio = Series {
        label: "log_q ratio".into(),
        points: Vec::new(),
    };
    let mut log_bound = Series {
        label: "log_q bound shape".into(),
        points: Vec::new(),
    };
    let mut hypothesis_ok = true;
    for k in 1..=cfg.kmax {
        let rec = dilation_bound_check(&f, &bp, k)?;
        hypothesis_ok = rec.hypothesis_ok;
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            rec.k, rec.norm_in, rec.norm_out, rec.ratio, rec.bound_shape, rec.ratio_over_bound
        ));
        ratio_points.push((k, rec.ratio));
        normalized_points.push((k, rec.ratio_over_bound));
        log_ratio.points.push((k as f64, rec.ratio.ln() / q.ln()));
        log_bound
            .points
            .push((k as f64, rec.bound_shape.ln() / q.ln()));
    }
    let mut report = ScanReport::new(csv);
    if !hypothesis_ok {
        report.line(format!(
            "warning: s = {} <= sigma_r = {}, outside the envelope regime; growth is expected",
            bp.s(),
            bp.sigma_r()
        ));
    }
    if normalized_points.len() >= 3 {
        let scaling = fit_exponent(&ratio_points, q)?;
        let normalized = fit_exponent(&normalized_points, q)?;
        report.line(format!("scaling_exponent = {}", scaling.slope));
        report.line(format!("scaling_constant = {}", scaling.constant(q)));
        report.line(format!("normalized_slope = {}", normalized.slope));
        report.line(format!("normalized_max_dev = {}", normalized.residual));
        report.pass = normalized.slope <= FLAT_SLOPE;
    } else {
        report.line("fit skipped: needs kmax >= 3");
        report.pass = normalized_points.iter().all(|(_, v)| v.is_finite());
    }
    report.line(format!("pass = {}", report.pass));
    report.chart = Some(Chart {
        title: format!(
            "dilation scan, s={} r={} t={}",
            bp.s(),
            bp.r(),
            bp.t()
        ),
        x_label: "k".into(),
        y_label: "log_q".into(),
        series: vec![log_ratio, log_bound],
    });
    Ok(report)
}

/// Norm of sums of disjoint dilated translates against the coefficient
/// envelope, row per dilation step. Steps whose dilate has not yet shrunk
/// the support into the center ball are skipped.
pub fn run_localize_scan(cfg: &Resolved) -> CliResult<ScanReport> {
    let (params, f) = load_function(cfg)?;
    let bp = cfg.besov_params()?;
    let q = params.qf();
    let count = cfg.centers.unwrap_or(params.q() as usize);
    let centers = localization_centers(&params, cfg.i_level, count)?;
    let coeffs = vec![Complex64::new(1.0, 0.0); centers.len()];
    let mut csv = String::from("j,i_level,centers,lhs,rhs_shape,ratio\n");
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    let mut series = Series {
        label: "lhs / envelope".into(),
        points: Vec::new(),
    };
    let mut hypothesis_ok = true;
    for j in 1..=cfg.jmax {
        match localization_bound_check(&f, &bp, j, cfg.i_level, &centers, &coeffs) {
            Ok(rec) => {
                hypothesis_ok = rec.hypothesis_ok;
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    rec.j, rec.level, rec.centers, rec.lhs, rec.rhs_shape, rec.ratio
                ));
                points.push((j, rec.ratio));
                series.points.push((j as f64, rec.ratio));
            }
            Err(CoreError::SupportViolation { .. }) => skipped.push(j),
            Err(e) => return Err(e.into()),
        }
    }
    let mut report = ScanReport::new(csv);
    if !skipped.is_empty() {
        let list: Vec<String> = skipped.iter().map(|j| j.to_string()).collect();
        report.line(format!(
            "skipped j = {}: support not yet inside the level-{} ball",
            list.join(","),
            cfg.i_level
        ));
    }
    if !hypothesis_ok {
        report.line(format!(
            "warning: outside the envelope regime (need s > sigma_r and t <= r; s = {}, sigma_r = {}, r = {}, t = {})",
            bp.s(),
            bp.sigma_r(),
            bp.r(),
            bp.t()
        ));
    }
    if points.is_empty() {
        return Err(CliError::Check(format!(
            "no admissible dilation step up to jmax = {}; support never fits the level-{} ball",
            cfg.jmax, cfg.i_level
        )));
    }
    if points.len() >= 3 {
        let fit = fit_exponent(&points, q)?;
        report.line(format!("ratio_slope = {}", fit.slope));
        report.line(format!("ratio_constant = {}", fit.constant(q)));
        report.pass = fit.slope <= FLAT_SLOPE;
    } else {
        report.line("fit skipped: needs at least 3 admissible steps");
        report.pass = points.iter().all(|(_, v)| v.is_finite());
    }
    report.line(format!("pass = {}", report.pass));
    report.chart = Some(Chart {
        title: format!(
            "localization scan, level {} with {} centers",
            cfg.i_level, count
        ),
        x_label: "j".into(),
        y_label: "ratio".into(),
        series: vec![series],
    });
    Ok(report)
}

struct CheckRow {
    name: &'static str,
    cases: usize,
    failures: usize,
    max_err: f64,
}

impl CheckRow {
    fn new(name: &'static str) -> CheckRow {
        CheckRow {
            name,
            cases: 0,
            failures: 0,
            max_err: 0.0,
        }
    }

    fn record(&mut self, err: f64, tol: f64) {
        self.cases += 1;
        if err.is_nan() || err > tol {
            self.failures += 1;
        }
        self.max_err = self.max_err.max(err);
    }
}

/// A battery of identities the whole library rests on, exercised on the
/// input function and a few companions. Every failure counts, a single one
/// fails the run.
pub fn run_invariants(cfg: &Resolved) -> CliResult<ScanReport> {
    let (params, loaded) = load_function(cfg)?;
    let loaded = if loaded.side() == Side::Frequency {
        loaded.reinterpret(Side::Spatial)
    } else {
        loaded
    };
    let unit = builtin_function(&params, "unit-ball")?;
    let mut corpus = vec![loaded.clone(), unit];
    if !loaded.is_zero() {
        corpus.push(dilate(&loaded, 1)?);
    }

    let mut roundtrip = CheckRow::new("fourier_roundtrip");
    let mut plancherel = CheckRow::new("plancherel");
    let mut naive = CheckRow::new("fast_matches_naive");
    let mut partition = CheckRow::new("block_partition");
    let mut orthogonality = CheckRow::new("block_orthogonality");
    let mut translation = CheckRow::new("besov_translation_invariance");
    let mut scaling = CheckRow::new("dilation_lr_scaling");

    let bp = cfg.besov_params()?;
    let shift = params.monomial(1, -1)?;
    for g in &corpus {
        let spectrum = fourier(g)?;
        let back = inverse_fourier(&spectrum)?;
        roundtrip.record(back.max_abs_diff(g)?, TOL);

        let scale = g.lr_norm(2.0).max(1.0);
        plancherel.record((g.lr_norm(2.0) - spectrum.lr_norm(2.0)).abs() / scale, TOL);

        naive.record(spectrum.max_abs_diff(&naive_fourier(g)?)?, TOL);

        let dec = lp_decompose(g)?;
        partition.record(dec.reconstruct()?.max_abs_diff(g)?, TOL);

        for j in 0..=dec.cutoff().min(2) {
            orthogonality.record(delta_j(&dec.blocks[j as usize], j + 1)?.max_abs(), TOL);
        }

        if !g.is_zero() {
            let norm = besov_norm(g, &bp)?;
            let translated = besov_norm(&g.translate(&shift), &bp)?;
            translation.record((norm - translated).abs() / norm.max(1.0), TOL);

            for k in [1, 2] {
                let expect = params.qf().powf(-k as f64 / 2.0) * g.lr_norm(2.0);
                let got = dilate(g, k)?.lr_norm(2.0);
                scaling.record((got - expect).abs() / expect.max(1.0), TOL);
            }
        }
    }

    let rows = [
        roundtrip,
        plancherel,
        naive,
        partition,
        orthogonality,
        translation,
        scaling,
    ];
    let mut csv = String::from("check,cases,failures,max_err\n");
    let mut failures = 0;
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            row.name, row.cases, row.failures, row.max_err
        ));
        failures += row.failures;
    }
    let mut report = ScanReport::new(csv);
    for row in &rows {
        report.line(format!(
            "{}: {}/{} ok, max_err = {}",
            row.name,
            row.cases - row.failures,
            row.cases,
            row.max_err
        ));
    }
    report.pass = failures == 0;
    report.line(format!("pass = {}", report.pass));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CommonArgs, FileConfig};

    fn cfg_with(args: CommonArgs) -> Resolved {
        Resolved::merge(FileConfig::default(), &args).unwrap()
    }

    #[test]
    fn builtin_names() {
        let params = FieldParams::new_shared(2, 1).unwrap();
        let d = builtin_function(&params, "unit-ball").unwrap();
        assert_eq!(d.integral().re, 1.0);
        let small = builtin_function(&params, "ball@2").unwrap();
        assert_eq!(small.integral().re, 0.25);
        assert!(builtin_function(&params, "ball@x").is_err());
        assert!(builtin_function(&params, "annulus").is_err());
    }

    #[test]
    fn dilate_scan_on_unit_ball_is_flat() {
        let cfg = cfg_with(CommonArgs {
            builtin: Some("unit-ball".into()),
            kmax: Some(6),
            ..CommonArgs::default()
        });
        let report = run_dilate_scan(&cfg).unwrap();
        assert!(report.pass);
        assert_eq!(report.body.lines().count(), 7);
        assert!(report.body.starts_with("k,norm_in,norm_out,ratio,bound_shape,ratio_over_bound\n"));
    }

    #[test]
    fn dilate_scan_outside_regime_grows() {
        // s = 0.2 < sigma_r = 1 for r = 1/2: the scan must warn and fail.
        let cfg = cfg_with(CommonArgs {
            builtin: Some("unit-ball".into()),
            s: Some(0.2),
            r: Some("0.5".into()),
            t: Some("0.5".into()),
            kmax: Some(6),
            ..CommonArgs::default()
        });
        let report = run_dilate_scan(&cfg).unwrap();
        assert!(!report.pass);
        assert!(report.summary.iter().any(|l| l.contains("warning")));
    }

    #[test]
    fn localize_scan_skips_wide_support() {
        let cfg = cfg_with(CommonArgs {
            seed: Some(11),
            num_terms: Some(5),
            max_level: Some(2),
            jmax: Some(6),
            ..CommonArgs::default()
        });
        let report = run_localize_scan(&cfg).unwrap();
        assert!(report.summary.iter().any(|l| l.starts_with("skipped j = 1")));
        assert!(report.pass);
    }

    #[test]
    fn invariants_pass_on_random_input() {
        let cfg = cfg_with(CommonArgs {
            seed: Some(3),
            p: Some(3),
            ..CommonArgs::default()
        });
        let report = run_invariants(&cfg).unwrap();
        assert!(report.pass, "summary: {:?}", report.summary);
        let failures: u32 = report
            .body
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(2).unwrap().parse::<u32>().unwrap())
            .sum();
        assert_eq!(failures, 0);
    }

    #[test]
    fn fourier_mode_emits_a_readable_document() {
        let cfg = cfg_with(CommonArgs {
            builtin: Some("ball@1".into()),
            p: Some(3),
            ..CommonArgs::default()
        });
        let report = run_fourier(&cfg).unwrap();
        assert!(report.pass);
        let g = lfbesov::textio::parse_function(&report.body).unwrap();
        assert_eq!(g.side(), Side::Frequency);
        // transform of a small ball indicator is q^-1 on one coarse dual cell
        assert_eq!(g.values().len(), 1);
        let v = g.values().values().next().unwrap();
        assert!((v.re - 1.0 / 3.0).abs() < 1e-15 && v.im == 0.0);
    }
}
