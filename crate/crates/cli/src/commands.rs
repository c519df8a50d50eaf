use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use foreal_core::baselines::{carlson, modified_oustaloup, oustaloup, BaselineConfig};
use foreal_core::controllers::{
    realize, symbolic_differintegrator_with, symbolic_fopd_bracket, symbolic_fopid, symbolic_leadlag,
};
use foreal_core::exact::parse_rational;
use foreal_core::exact::rational::to_f64;
use foreal_core::freqresp::{bode, fit_report, ideal_response, BodeSweep};
use foreal_core::ladder::{export_netlist, map_elements, synthesize_ladder};
use foreal_core::{
    BigRat, ControllerSpec, FreqUnit, FrequencyGrid, ParamPoly, Range, Realization, Sign, TransferFunction,
};
use serde::Serialize;

use crate::document::{LadderDocument, Meta, TfDocument};
use crate::{
    BodeArgs, CliError, Command, CompareArgs, Controller, Format, LadderArgs, Method, Params, RangeArg,
    RealizeArgs, SignArg, SweepArgs, SymbolicArgs, UnitArg,
};

pub(crate) fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Realize(a) => realize_cmd(a),
        Command::Symbolic(a) => symbolic_cmd(a),
        Command::Ladder(a) => ladder_cmd(a),
        Command::Bode(a) => bode_cmd(a),
        Command::Compare(a) => compare_cmd(a),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn read_in(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn range(r: RangeArg) -> Range {
    match r {
        RangeArg::Low => Range::Low,
        RangeArg::High => Range::High,
    }
}

fn sign(s: SignArg) -> Sign {
    match s {
        SignArg::Integrator => Sign::Integrator,
        SignArg::Differentiator => Sign::Differentiator,
    }
}

fn sign_name(s: SignArg) -> &'static str {
    match s {
        SignArg::Integrator => "integrator",
        SignArg::Differentiator => "differentiator",
    }
}

fn unit(u: UnitArg) -> FreqUnit {
    match u {
        UnitArg::Hz => FreqUnit::Hertz,
        UnitArg::Rad => FreqUnit::RadPerSec,
    }
}

fn unit_token(u: UnitArg) -> &'static str {
    match u {
        UnitArg::Hz => "hz",
        UnitArg::Rad => "rad",
    }
}

fn controller_name(c: Controller) -> &'static str {
    match c {
        Controller::Diffint => "diffint",
        Controller::Fopid => "fopid",
        Controller::Fopd => "fopd",
        Controller::Leadlag => "leadlag",
    }
}

/// Parameter names each controller uses, with the symbolic default.
fn param_names(c: Controller) -> &'static [(&'static str, &'static str)] {
    match c {
        Controller::Diffint => &[("lambda", "lambda"), ("T", "1")],
        Controller::Fopid => &[("Kp", "Kp"), ("Ki", "Ki"), ("Kd", "Kd"), ("lambda", "lambda"), ("mu", "mu")],
        Controller::Fopd => &[("Kp", "Kp"), ("Kd", "Kd"), ("mu", "mu")],
        Controller::Leadlag => &[("Kc", "Kc"), ("lambda", "lambda"), ("x", "x"), ("alpha", "alpha")],
    }
}

fn raw_param<'a>(p: &'a Params, name: &str) -> Option<&'a str> {
    match name {
        "lambda" => p.lambda.as_deref(),
        "mu" => p.mu.as_deref(),
        "alpha" => p.alpha.as_deref(),
        "x" => p.x.as_deref(),
        "Kp" => p.kp.as_deref(),
        "Ki" => p.ki.as_deref(),
        "Kd" => p.kd.as_deref(),
        "Kc" => p.kc.as_deref(),
        "T" => p.t.as_deref(),
        _ => None,
    }
}

fn flag(name: &str) -> String {
    match name {
        "T" => "--T".to_string(),
        _ => format!("--{}", name.to_ascii_lowercase()),
    }
}

fn numeric_params(p: &Params) -> Result<BTreeMap<&'static str, BigRat>, CliError> {
    let mut out = BTreeMap::new();
    for &(name, default) in param_names(p.controller) {
        let text = match raw_param(p, name) {
            Some(t) => t,
            None if name == "T" => default,
            None => {
                return Err(CliError::Validation(format!(
                    "{} requires {}",
                    controller_name(p.controller),
                    flag(name)
                )))
            }
        };
        let v = parse_rational(text)
            .map_err(|_| CliError::Validation(format!("{} must be an exact rational, got {text:?}", flag(name))))?;
        out.insert(name, v);
    }
    Ok(out)
}

fn spec_from(p: &Params, v: &BTreeMap<&'static str, BigRat>) -> ControllerSpec {
    let g = |k: &str| v[k].clone();
    match p.controller {
        Controller::Diffint => ControllerSpec::Differintegrator {
            lambda: g("lambda"),
            sign: sign(p.sign),
            range: range(p.range),
            t: g("T"),
        },
        Controller::Fopid => ControllerSpec::Fopid {
            kp: g("Kp"),
            ki: g("Ki"),
            kd: g("Kd"),
            lambda: g("lambda"),
            mu: g("mu"),
            range: range(p.range),
        },
        Controller::Fopd => ControllerSpec::FopdBracket {
            kp: g("Kp"),
            kd: g("Kd"),
            mu: g("mu"),
        },
        Controller::Leadlag => ControllerSpec::LeadLag {
            kc: g("Kc"),
            lambda: g("lambda"),
            x: g("x"),
            alpha: g("alpha"),
        },
    }
}

fn meta_for(p: &Params, params: BTreeMap<String, String>) -> Meta {
    let uses_range = matches!(p.controller, Controller::Diffint | Controller::Fopid);
    let mut params = params;
    if p.controller == Controller::Diffint {
        params.insert("sign".into(), sign_name(p.sign).to_string());
    }
    Meta {
        controller: controller_name(p.controller).to_string(),
        params,
        order: p.order,
        range: uses_range.then(|| range(p.range).to_string()),
    }
}

fn warn_beyond<R>(r: &Realization<R>, order: usize) {
    if r.beyond_validation {
        eprintln!("warning: order {order} exceeds the validated range; coefficients are exact but unverified against published forms");
    }
    if r.defect > 0 {
        eprintln!("note: Padé system rank defect {}; a reduced-order approximant was returned", r.defect);
    }
}

fn realize_cmd(a: RealizeArgs) -> Result<(), CliError> {
    let values = numeric_params(&a.params)?;
    let spec = spec_from(&a.params, &values);
    let r = realize(&spec, a.params.order)?;
    warn_beyond(&r, a.params.order);
    let meta = (!a.no_meta).then(|| {
        meta_for(
            &a.params,
            values.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        )
    });
    let mut doc = TfDocument::from_tf(&r.tf, r.gain.as_ref(), meta);
    if a.float {
        doc = doc.to_float()?;
    }
    write_out(a.out.as_deref(), &doc.emit())
}

fn symbolic_params(p: &Params) -> Result<BTreeMap<&'static str, ParamPoly>, CliError> {
    let mut out = BTreeMap::new();
    for &(name, default) in param_names(p.controller) {
        let text = raw_param(p, name).unwrap_or(default);
        let v: ParamPoly = text
            .parse()
            .map_err(|e| CliError::Validation(format!("{}: {e}", flag(name))))?;
        out.insert(name, v);
    }
    Ok(out)
}

fn symbolic_cmd(a: SymbolicArgs) -> Result<(), CliError> {
    let p = &a.params;
    let v = symbolic_params(p)?;
    let g = |k: &str| &v[k];
    let n = p.order;
    let r = match p.controller {
        Controller::Diffint => symbolic_differintegrator_with(g("lambda"), g("T"), range(p.range), n, sign(p.sign))?,
        Controller::Fopid => symbolic_fopid(g("Kp"), g("Ki"), g("Kd"), g("lambda"), g("mu"), range(p.range), n)?,
        Controller::Fopd => {
            if g("Kp").term_count() == 0 {
                return Err(foreal_core::ControllerError::NotExpandable.into());
            }
            symbolic_fopd_bracket(g("Kp"), g("Kd"), g("mu"), n)?
        }
        Controller::Leadlag => symbolic_leadlag(g("Kc"), g("lambda"), g("x"), g("alpha"), n)?,
    };
    warn_beyond(&r, n);
    let meta = (!a.no_meta).then(|| meta_for(p, v.iter().map(|(k, x)| (k.to_string(), x.to_string())).collect()));
    let text = match a.format {
        Format::Json => TfDocument::from_tf(&r.tf, r.gain.as_ref(), meta).emit(),
        Format::Text => {
            let mut s = String::new();
            if let Some(m) = &meta {
                let params: Vec<String> = m.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(s, "# {} order={} {}", m.controller, m.order, params.join(" "));
            }
            let gain = r.gain.as_ref().map(|g| format!("{} * ", g.label)).unwrap_or_default();
            let _ = writeln!(s, "H(s) = {gain}({}) / ({})", r.tf.num(), r.tf.den());
            s
        }
    };
    write_out(a.out.as_deref(), &text)
}

fn ladder_cmd(a: LadderArgs) -> Result<(), CliError> {
    let doc = TfDocument::parse(&read_in(&a.tf)?)?;
    let tf = doc.to_tf()?;
    let net = synthesize_ladder(&tf)?;
    let circuit = map_elements(&net);
    let out = LadderDocument::new(&net, &circuit, doc.gain.clone(), if a.no_meta { None } else { doc.meta.clone() });
    if let Some(path) = &a.netlist {
        write_out(Some(path), &export_netlist(&circuit, &a.name))?;
    }
    write_out(a.out.as_deref(), &out.emit())
}

fn grid(s: &SweepArgs) -> Result<FrequencyGrid, CliError> {
    Ok(FrequencyGrid::log(s.fmin, s.fmax, s.points_per_decade, unit(s.unit))?)
}

fn num(v: f64) -> String {
    format!("{v}")
}

fn bode_cmd(a: BodeArgs) -> Result<(), CliError> {
    let doc = TfDocument::parse(&read_in(&a.tf)?)?;
    let tf = doc.to_folded_tf()?;
    let g = grid(&a.sweep)?;
    let sweep = bode(&tf, &g);
    let mut s = String::new();
    if !a.no_meta {
        let source = doc.meta.as_ref().map(|m| m.controller.as_str()).unwrap_or("tf");
        let _ = writeln!(
            s,
            "# source={source} points_per_decade={} pole_hits={}",
            a.sweep.points_per_decade,
            sweep.pole_hits.len()
        );
    }
    let _ = writeln!(s, "freq_{},mag_db,phase_deg", unit_token(a.sweep.unit));
    for i in 0..sweep.len() {
        let _ = writeln!(s, "{},{},{}", num(sweep.freqs[i]), num(sweep.mag_db[i]), num(sweep.phase_deg[i]));
    }
    write_out(a.out.as_deref(), &s)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::CfeLow => "cfe-low",
        Method::CfeHigh => "cfe-high",
        Method::Oustaloup => "oustaloup",
        Method::ModOustaloup => "mod-oustaloup",
        Method::Carlson => "carlson",
    }
}

#[derive(Serialize)]
struct MethodReport {
    method: &'static str,
    order: usize,
    max_phase_err_deg: f64,
    mean_phase_err_deg: f64,
    max_mag_err_db: f64,
    mean_mag_err_db: f64,
    constant_phase_band: Option<[f64; 2]>,
    pole_hits: usize,
}

#[derive(Serialize)]
struct CompareReport {
    lambda: String,
    sign: String,
    unit: &'static str,
    band: [f64; 2],
    tolerance_deg: f64,
    methods: Vec<MethodReport>,
}

fn pair(v: &Option<Vec<f64>>, default: (f64, f64), what: &str) -> Result<(f64, f64), CliError> {
    match v.as_deref() {
        None => Ok(default),
        Some([lo, hi]) if lo.is_finite() && hi.is_finite() && 0.0 < *lo && lo < hi => Ok((*lo, *hi)),
        Some(_) => Err(CliError::Validation(format!("{what} must be two values 0 < lo < hi"))),
    }
}

fn method_tf(a: &CompareArgs, m: Method, lambda: &BigRat, t: &BigRat) -> Result<TransferFunction<BigRat>, CliError> {
    let s = sign(a.sign);
    let u = unit(a.sweep.unit);
    let (lo, hi) = pair(&a.oustaloup_band, (a.sweep.fmin, a.sweep.fmax), "--oustaloup-band")?;
    let mut cfg = BaselineConfig::new(to_f64(lambda), (u.to_rad(lo), u.to_rad(hi)), a.oustaloup_n);
    cfg.sign = s;
    let spec = |r| ControllerSpec::Differintegrator {
        lambda: lambda.clone(),
        sign: s,
        range: r,
        t: t.clone(),
    };
    Ok(match m {
        Method::CfeLow => realize(&spec(Range::Low), a.order)?.tf,
        Method::CfeHigh => realize(&spec(Range::High), a.order)?.tf,
        Method::Oustaloup => oustaloup(&cfg)?,
        Method::ModOustaloup => modified_oustaloup(&cfg)?,
        Method::Carlson => carlson(lambda, a.carlson_iterations, s)?,
    })
}

fn compare_cmd(a: CompareArgs) -> Result<(), CliError> {
    let lambda = parse_rational(&a.lambda)
        .map_err(|_| CliError::Validation(format!("--lambda must be an exact rational, got {:?}", a.lambda)))?;
    let t = parse_rational(&a.t)
        .map_err(|_| CliError::Validation(format!("--T must be an exact rational, got {:?}", a.t)))?;
    if !(a.tolerance.is_finite() && a.tolerance > 0.0) {
        return Err(CliError::Validation("--tolerance must be positive".into()));
    }
    let g = grid(&a.sweep)?;
    let band = pair(&a.band, (a.sweep.fmin, a.sweep.fmax), "--band")?;
    let ideal = ideal_response(
        &ControllerSpec::Differintegrator {
            lambda: lambda.clone(),
            sign: sign(a.sign),
            range: Range::Low,
            t: t.clone(),
        },
        &g,
    );
    let mut sweeps: Vec<(Method, BodeSweep)> = Vec::new();
    let mut reports = Vec::new();
    for &m in &a.methods {
        let tf = method_tf(&a, m, &lambda, &t)?;
        let sweep = bode(&tf, &g);
        let fit = fit_report(&sweep, &ideal, band, a.tolerance)?;
        reports.push(MethodReport {
            method: method_name(m),
            order: tf.num().degree().max(tf.den().degree()),
            max_phase_err_deg: fit.max_phase_err_deg,
            mean_phase_err_deg: fit.mean_phase_err_deg,
            max_mag_err_db: fit.max_mag_err_db,
            mean_mag_err_db: fit.mean_mag_err_db,
            constant_phase_band: fit.constant_phase_band.map(|(x, y)| [x, y]),
            pole_hits: sweep.pole_hits.len(),
        });
        sweeps.push((m, sweep));
    }

    let mut csv = String::new();
    if !a.no_meta {
        let _ = writeln!(
            csv,
            "# lambda={lambda} sign={} order={} points_per_decade={}",
            sign_name(a.sign),
            a.order,
            a.sweep.points_per_decade
        );
    }
    let mut header = format!("freq_{},ideal_mag_db,ideal_phase_deg", unit_token(a.sweep.unit));
    for (m, _) in &sweeps {
        let col = method_name(*m).replace('-', "_");
        let _ = write!(header, ",{col}_mag_db,{col}_phase_deg");
    }
    let _ = writeln!(csv, "{header}");
    for i in 0..g.freqs.len() {
        let mut row = format!("{},{},{}", num(g.freqs[i]), num(ideal.mag_db[i]), num(ideal.phase_deg[i]));
        for (_, s) in &sweeps {
            let _ = write!(row, ",{},{}", num(s.mag_db[i]), num(s.phase_deg[i]));
        }
        let _ = writeln!(csv, "{row}");
    }

    let report = CompareReport {
        lambda: lambda.to_string(),
        sign: sign_name(a.sign).to_string(),
        unit: unit_token(a.sweep.unit),
        band: [band.0, band.1],
        tolerance_deg: a.tolerance,
        methods: reports,
    };
    let mut json = serde_json::to_string_pretty(&report).expect("serializable");
    json.push('\n');

    write_out(a.out.as_deref(), &csv)?;
    match (&a.report, &a.out) {
        (Some(p), _) => write_out(Some(p), &json),
        (None, Some(_)) => write_out(None, &json),
        (None, None) => Ok(()),
    }
}
