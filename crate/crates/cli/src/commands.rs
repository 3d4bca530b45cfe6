use lpbesov::exponent::conjugate;
use lpbesov::inequalities::{derive_params, run_suite, GeneratorKind, SuiteConfig, VerificationReport};
use lpbesov::interpolation::{
    lemma1_constant, partition_constant, run_interp_suite, InterpCheck, ReiterationParams,
    SuiteRecord, DUALITY_CONSTANT,
};
use lpbesov::norms::{
    besov_seminorm, field_lebesgue_norm, lorentz_norm, triebel_seminorm, BesovParams,
    LorentzParams, MeasuredValues,
};
use lpbesov::sharpness::{build_atom, growth_experiment, GrowthRow, SharpnessParams};
use lpbesov::spectral::{decompose, max_scale, CutoffProfile, SampledField};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Check, Command, Generator, InterpArgs, NormArgs, SharpnessArgs, Space, VerifyArgs};
use crate::report::{emit_report, format_float, Record, Report};
use crate::CliError;

fn require<T: Copy>(value: Option<T>, flag: &str, context: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {context}")))
}

fn exponent_value(p: f64) -> Value {
    if p.is_infinite() {
        json!("inf")
    } else {
        json!(p)
    }
}

fn header(command: &Command) -> Result<Value, CliError> {
    let config = serde_json::to_value(command)
        .map_err(|e| CliError::Runtime(format!("cannot encode configuration: {e}")))?;
    Ok(json!({ "tool": "lpbesov", "version": env!("CARGO_PKG_VERSION"), "config": config }))
}

pub fn run(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Norm(a) => norm(a),
        Command::Verify(a) => verify(a, header(command)?),
        Command::Interp(a) => interp(a, header(command)?),
        Command::Sharpness(a) => sharpness(a, header(command)?),
    }
}

fn norm(a: &NormArgs) -> Result<(), CliError> {
    let field = SampledField::read(&a.input)?;
    let ctx = match a.space {
        Space::Lebesgue => "--space lebesgue",
        Space::Lorentz => "--space lorentz",
        Space::Besov => "--space besov",
        Space::Triebel => "--space triebel",
    };
    let (value, params) = match a.space {
        Space::Lebesgue => {
            let p = require(a.p, "p", ctx)?;
            (field_lebesgue_norm(&field, p)?, json!({ "p": exponent_value(p) }))
        }
        Space::Lorentz => {
            let lp = LorentzParams::new(require(a.p, "p", ctx)?, require(a.r, "r", ctx)?)?;
            (lorentz_norm(&MeasuredValues::from_field(&field), lp)?, json!(lp))
        }
        Space::Besov | Space::Triebel => {
            let b = BesovParams::new(
                require(a.s, "s", ctx)?,
                require(a.p, "p", ctx)?,
                require(a.q, "q", ctx)?,
            )?;
            let jmin = a.jmin.unwrap_or(0);
            let jmax = a.jmax.unwrap_or_else(|| max_scale(field.grid()));
            let d = decompose(&field, &CutoffProfile::default(), jmin, jmax)?;
            let v = if a.space == Space::Besov {
                besov_seminorm(&d, b)?
            } else {
                triebel_seminorm(&d, b)?
            };
            let mut params = json!(b);
            params["jmin"] = json!(jmin);
            params["jmax"] = json!(jmax);
            (v, params)
        }
    };
    let mut params = params;
    params["space"] = serde_json::to_value(a.space).expect("space encodes");
    let out = json!({ "norm": value, "params": params });
    println!("{out}");
    Ok(())
}

#[derive(Serialize)]
struct VerifyRow {
    instance_id: u64,
    lhs: f64,
    rhs: f64,
    ratio: f64,
    generator_descriptor: String,
}

impl Record for VerifyRow {
    fn headers() -> &'static [&'static str] {
        &["instance_id", "lhs", "rhs", "ratio", "generator_descriptor"]
    }
    fn fields(&self) -> Vec<String> {
        vec![
            self.instance_id.to_string(),
            format_float(self.lhs),
            format_float(self.rhs),
            format_float(self.ratio),
            self.generator_descriptor.clone(),
        ]
    }
}

impl From<&VerificationReport> for VerifyRow {
    fn from(r: &VerificationReport) -> Self {
        Self {
            instance_id: r.instance_id,
            lhs: r.lhs,
            rhs: r.rhs,
            ratio: r.ratio,
            generator_descriptor: r.descriptor.clone(),
        }
    }
}

fn generator_kind(g: Generator) -> GeneratorKind {
    match g {
        Generator::SingleBlock => GeneratorKind::SingleBlock,
        Generator::MultiBlockRandom => GeneratorKind::MultiBlockRandom,
        Generator::Lacunary => GeneratorKind::Lacunary,
        Generator::Atomic => GeneratorKind::Atomic,
    }
}

fn verify(a: &VerifyArgs, header: Value) -> Result<(), CliError> {
    let case = derive_params(a.alpha, a.beta, a.q0, a.q1, a.r0, a.r1)?;
    let case = match (a.r, a.auto_r_star) {
        (Some(r), false) => case.with_r(r)?,
        (None, true) => case,
        _ => return Err(CliError::Usage("exactly one of --r and --auto-r-star is required".into())),
    };
    let config = SuiteConfig::new(generator_kind(a.generator), a.count, a.seed, a.grid);
    let summary = run_suite(&case, &config)?;
    let rows: Vec<VerifyRow> = summary.reports.iter().map(VerifyRow::from).collect();
    let report = Report {
        header,
        records: &rows,
        summary: json!({
            "case": case,
            "count": rows.len(),
            "max_ratio": summary.max_ratio,
            "argmax": summary.argmax,
            "argmax_descriptor": summary.argmax_descriptor,
        }),
    };
    emit_report(&report, &a.output)
}

#[derive(Serialize)]
struct InterpRow(SuiteRecord);

impl Record for InterpRow {
    fn headers() -> &'static [&'static str] {
        &["instance_id", "lhs", "rhs", "ratio"]
    }
    fn fields(&self) -> Vec<String> {
        vec![
            self.0.instance_id.to_string(),
            format_float(self.0.lhs),
            format_float(self.0.rhs),
            format_float(self.0.ratio),
        ]
    }
}

fn interp(a: &InterpArgs, header: Value) -> Result<(), CliError> {
    let (check, constant) = match a.check {
        Check::KEquivalence => {
            let (p, r) = (require(a.p, "p", "k-equivalence")?, require(a.r, "r", "k-equivalence")?);
            LorentzParams::new(p, r)?;
            (InterpCheck::KEquivalence { p, r }, Some(conjugate(p)))
        }
        Check::Lemma1 => {
            let (p, r) = (require(a.p, "p", "lemma1")?, require(a.r, "r", "lemma1")?);
            (InterpCheck::Lemma1 { p, r }, Some(lemma1_constant(LorentzParams::new(p, r)?)?))
        }
        Check::Partition => {
            let q0 = require(a.q0, "q0", "partition")?;
            let q1 = require(a.q1, "q1", "partition")?;
            let r0 = require(a.r, "r", "partition")?;
            (InterpCheck::Partition { q0, q1, r0 }, Some(partition_constant(q0, q1, r0)?))
        }
        Check::Duality => {
            let (p, r) = (require(a.p, "p", "duality")?, require(a.r, "r", "duality")?);
            LorentzParams::new(p, r)?;
            (InterpCheck::Duality { p, r }, Some(DUALITY_CONSTANT))
        }
        Check::Reiteration => {
            let params = ReiterationParams {
                p0: require(a.q0, "q0", "reiteration")?,
                r0: require(a.r0, "r0", "reiteration")?,
                p1: require(a.q1, "q1", "reiteration")?,
                r1: require(a.r1, "r1", "reiteration")?,
                theta: require(a.theta, "theta", "reiteration")?,
                r: require(a.r, "r", "reiteration")?,
            };
            params.validate()?;
            (InterpCheck::Reiteration(params), None)
        }
    };
    let records = run_interp_suite(&check, a.suite_size, a.seed)?;
    let ratios = records.iter().map(|r| r.ratio);
    let max = ratios.clone().fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    let min = ratios.fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))));
    let rows: Vec<InterpRow> = records.into_iter().map(InterpRow).collect();
    let report = Report {
        header,
        records: &rows,
        summary: json!({
            "check": check,
            "count": rows.len(),
            "min_ratio": min,
            "max_ratio": max,
            "constant": constant,
        }),
    };
    emit_report(&report, &a.output)
}

#[derive(Serialize)]
struct SharpnessRow(GrowthRow);

impl Record for SharpnessRow {
    fn headers() -> &'static [&'static str] {
        &["L", "besov0", "besov1", "pairing", "g_dual_norm", "lorentz_lower", "rhs_product", "ratio"]
    }
    fn fields(&self) -> Vec<String> {
        let r = &self.0;
        let mut out = vec![r.big_l.to_string()];
        out.extend(
            [r.besov0, r.besov1, r.pairing, r.g_dual_norm, r.lorentz_lower, r.rhs_product, r.ratio]
                .map(format_float),
        );
        out
    }
}

/// `L_min`, then every `2^a` and `3·2^a` inside the range, then `L_max`.
pub fn l_values(l_min: u32, l_max: u32) -> Vec<u32> {
    let mut out = vec![l_min, l_max];
    let mut p: u64 = 1;
    while p <= l_max as u64 {
        for v in [p, 3 * p] {
            if v >= l_min as u64 && v <= l_max as u64 {
                out.push(v as u32);
            }
        }
        p *= 2;
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn sharpness(a: &SharpnessArgs, header: Value) -> Result<(), CliError> {
    if a.l_min == 0 || a.l_min > a.l_max {
        return Err(CliError::Usage(format!("need 1 <= --Lmin <= --Lmax, got {}..{}", a.l_min, a.l_max)));
    }
    let r = match a.r {
        Some(r) => r,
        None => derive_params(a.alpha, a.beta, a.q0, a.q1, a.r0, a.r1)?.r_star,
    };
    let mut params = SharpnessParams::new(a.n, a.alpha, a.beta, a.q0, a.q1, a.r0, a.r1, r)?;
    if let Some(j1) = a.j1 {
        params = params.with_j1(j1)?;
    }
    let resolution = a.resolution.unwrap_or(if a.n == 1 { 2048 } else { 256 });
    let atom = build_atom(a.moments, a.smoothness.unwrap_or(a.moments + 1), resolution, a.n)?;
    let ls = l_values(a.l_min, a.l_max);
    let growth = growth_experiment(&params, &atom, &ls)?;
    let rows: Vec<SharpnessRow> = growth.rows.iter().copied().map(SharpnessRow).collect();
    let report = Report {
        header,
        records: &rows,
        summary: json!({
            "params": growth.params,
            "L_values": ls,
            "checks": growth.checks,
            "lorentz_exact_slope": growth.lorentz_exact_slope,
            "passed": growth.passed(),
        }),
    };
    emit_report(&report, &a.output)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_l_values() {
        assert_eq!(l_values(8, 64), vec![8, 12, 16, 24, 32, 48, 64]);
        assert_eq!(l_values(5, 20), vec![5, 6, 8, 12, 16, 20]);
    }
}
