use std::fs;
use std::io::Write;

use anyhow::{bail, Context};
use dunkl_core::kernel::{density_theta, heat_kernel_eval, kernel_eval, kernel_eval_imaginary};
use dunkl_core::verify::run_suite;
use dunkl_core::{
    format_rational, parse_rational, parse_rational_list, AppellTables, DunklContext, Family, Fault, KernelValue,
    MultiIndex, NumericEvalConfig, Polynomial, Rational, RootSystem, Strategy, Suite, VerifyConfig,
};
use num_traits::Signed;
use serde_json::{json, Value};

use crate::render::{float, index_label, index_latex, math, Rendered};
use crate::{Cli, Command, ExactJob, FaultArg, GroupArgs, Quantity, Table, DEGREE_CAP};

/// Runs the parsed command and writes its output; returns the exit code.
pub fn run(cli: &Cli) -> anyhow::Result<u8> {
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::available()
    };
    let (rendered, config, code) = match &cli.command {
        Command::Groups { family, rank } => {
            let r = groups(family.as_deref(), *rank)?;
            (r, json!({"command": "groups", "family": family, "rank": rank}), 0)
        }
        Command::Gen { table, job } => {
            let ctx = build_context(&job.group)?;
            let t = parse_rational(&job.t)?;
            check_degree(job)?;
            let r = match table {
                Table::Moments => moments(&ctx, job.max_degree)?,
                Table::Appell => appell(&ctx, job.max_degree, &t, strategy)?,
                Table::Hermite => hermite(&ctx, job.max_degree, &t)?,
            };
            let name = format!("{table:?}").to_lowercase();
            (r, exact_config(&format!("gen {name}"), &ctx, job, &t), 0)
        }
        Command::Verify {
            suite,
            job,
            inject_fault,
        } => {
            let ctx = build_context(&job.group)?;
            let t = parse_rational(&job.t)?;
            check_degree(job)?;
            let suites = parse_suites(suite)?;
            let mut cfg = VerifyConfig::new(job.max_degree, t.clone());
            cfg.strategy = strategy;
            cfg.fault = inject_fault.map(|FaultArg::PerturbALambda| Fault::PerturbALambda);
            let (r, passed) = verify(&ctx, &suites, &cfg)?;
            let mut config = exact_config("verify", &ctx, job, &t);
            config["suite"] = json!(suite);
            (r, config, if passed { 0 } else { 1 })
        }
        Command::Eval {
            quantity,
            group,
            x,
            y,
            t,
            tol,
            series_degree,
            imaginary,
        } => {
            let ctx = build_context(group)?;
            let cfg = NumericEvalConfig {
                tolerance: *tol,
                max_degree: *series_degree,
                ..NumericEvalConfig::default()
            };
            cfg.validate()?;
            let xs = parse_point(x, ctx.rank()).context("--x")?;
            let ys = parse_point(y, ctx.rank()).context("--y")?;
            let r = eval(&ctx, *quantity, &xs, &ys, *t, *imaginary, &cfg)?;
            let config = json!({
                "command": format!("eval {}", format!("{quantity:?}").to_lowercase()),
                "family": ctx.root_system().family().name(),
                "rank": ctx.rank(),
                "k": k_strings(&ctx),
                "x": xs,
                "y": ys,
                "t": t,
                "tol": tol,
                "series_degree": series_degree,
                "imaginary": imaginary,
            });
            (r, config, 0)
        }
    };
    let text = rendered.format(cli.format, config)?;
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(code)
}

fn build_context(g: &GroupArgs) -> anyhow::Result<DunklContext> {
    let rs = RootSystem::from_catalog(&g.family, g.rank)?;
    let mut k = parse_rational_list(&g.k)?;
    let orbits = rs.root_orbits().len();
    if k.len() == 1 && orbits > 1 {
        k = vec![k[0].clone(); orbits];
    }
    if let Some(v) = k.iter().find(|v| v.is_negative()) {
        bail!("multiplicity values must be non-negative, got {}", format_rational(v));
    }
    Ok(DunklContext::from_catalog(&g.family, g.rank, k)?)
}

fn check_degree(job: &ExactJob) -> anyhow::Result<()> {
    if job.max_degree > DEGREE_CAP && !job.allow_high_degree {
        bail!(
            "--max-degree {} exceeds the cap of {DEGREE_CAP}; pass --allow-high-degree to override",
            job.max_degree
        );
    }
    Ok(())
}

fn k_strings(ctx: &DunklContext) -> Vec<String> {
    ctx.multiplicity().orbit_values().iter().map(format_rational).collect()
}

fn k_label(ctx: &DunklContext) -> String {
    format!("({})", k_strings(ctx).join(", "))
}

fn exact_config(command: &str, ctx: &DunklContext, job: &ExactJob, t: &Rational) -> Value {
    json!({
        "command": command,
        "family": ctx.root_system().family().name(),
        "rank": ctx.rank(),
        "k": k_strings(ctx),
        "t": format_rational(t),
        "max_degree": job.max_degree,
    })
}

fn parse_point(s: &str, rank: usize) -> anyhow::Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().with_context(|| format!("invalid number {p:?}")))
        .collect::<anyhow::Result<_>>()?;
    if v.len() != rank {
        bail!("expected {rank} coordinates, got {}", v.len());
    }
    if v.iter().any(|c| !c.is_finite()) {
        bail!("coordinates must be finite");
    }
    Ok(v)
}

fn parse_suites(s: &str) -> anyhow::Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    s.split(',')
        .map(|name| name.trim().parse::<Suite>().map_err(Into::into))
        .collect()
}

fn groups(family: Option<&str>, rank: Option<usize>) -> anyhow::Result<Rendered> {
    let families: Vec<Family> = match family {
        Some(f) => vec![f.parse()?],
        None => vec![Family::Z2, Family::A, Family::B, Family::D],
    };
    let mut systems = Vec::new();
    for f in families {
        match rank {
            Some(r) => systems.push(RootSystem::build(f, r)?),
            None => {
                for r in f.min_rank()..=4 {
                    systems.push(RootSystem::build(f, r)?);
                }
            }
        }
    }
    let mut entries = Vec::new();
    let mut out = Rendered::new(Value::Null);
    out.csv_header = [
        "family",
        "rank",
        "label",
        "order",
        "orbits",
        "orbit_sizes",
        "positive_roots",
    ]
    .map(String::from)
    .to_vec();
    out.latex_header = ["group", "$N$", "$|W|$", "orbit sizes", "$|R_+|$"]
        .map(String::from)
        .to_vec();
    for rs in &systems {
        let order = rs.generate_group()?.len();
        let orbits: Vec<Value> = rs
            .root_orbits()
            .iter()
            .map(|o| {
                let rep: Vec<String> = rs.roots()[o[0]].iter().map(format_rational).collect();
                json!({"size": o.len(), "representative": rep})
            })
            .collect();
        let sizes: Vec<String> = rs.root_orbits().iter().map(|o| o.len().to_string()).collect();
        let positive = rs.positive_indices().len();
        let label = rs.label();
        out.text.push(format!(
            "{label:<6} rank {}  order {order}  {} orbit{} (sizes {})  |R+| = {positive}",
            rs.rank(),
            sizes.len(),
            if sizes.len() == 1 { "" } else { "s" },
            sizes.join(", ")
        ));
        out.csv_rows.push(vec![
            rs.family().name().into(),
            rs.rank().to_string(),
            label.clone(),
            order.to_string(),
            sizes.len().to_string(),
            sizes.join(";"),
            positive.to_string(),
        ]);
        out.latex_rows.push(vec![
            math(&label),
            rs.rank().to_string(),
            order.to_string(),
            sizes.join(", "),
            positive.to_string(),
        ]);
        entries.push(json!({
            "family": rs.family().name(),
            "rank": rs.rank(),
            "label": label,
            "order": order,
            "orbits": orbits,
            "positive_roots": positive,
        }));
    }
    out.results = Value::Array(entries);
    Ok(out)
}

fn moments(ctx: &DunklContext, max_degree: u32) -> anyhow::Result<Rendered> {
    let mut out = Rendered::new(Value::Null);
    out.csv_header = vec!["nu".into(), "m".into()];
    out.latex_header = vec![math("\\nu"), math("m_\\nu")];
    let mut entries = Vec::new();
    for nu in MultiIndex::up_to_degree(ctx.rank(), max_degree) {
        let m = ctx.moment_function(&nu)?;
        push_row(&mut out, &nu, "m", &[&m]);
        entries.push(json!({"nu": nu.exponents(), "m": m.to_string()}));
    }
    out.results = json!({
        "group": ctx.root_system().label(),
        "k": k_strings(ctx),
        "entries": entries,
    });
    Ok(out)
}

fn appell(ctx: &DunklContext, max_degree: u32, t: &Rational, strategy: Strategy) -> anyhow::Result<Rendered> {
    let tables = AppellTables::generate(ctx, max_degree, t, strategy)?;
    let mut out = Rendered::new(Value::Null);
    out.csv_header = vec!["nu".into(), "R".into(), "S".into()];
    out.latex_header = vec![math("\\nu"), math("R_\\nu(t,x)"), math("S_\\nu(t,x)")];
    out.text.push(format!(
        "{} k = {} t = {}",
        ctx.root_system().label(),
        k_label(ctx),
        format_rational(t)
    ));
    let mut entries = Vec::new();
    for e in &tables.entries {
        push_row(&mut out, &e.nu, "", &[&e.character, &e.cocharacter]);
        entries.push(json!({
            "nu": e.nu.exponents(),
            "R": e.character.to_string(),
            "S": e.cocharacter.to_string(),
        }));
    }
    out.results = json!({
        "group": ctx.root_system().label(),
        "k": k_strings(ctx),
        "t": format_rational(t),
        "entries": entries,
    });
    Ok(out)
}

fn hermite(ctx: &DunklContext, max_degree: u32, t: &Rational) -> anyhow::Result<Rendered> {
    if !t.is_positive() {
        bail!("--t must be positive for the Hermite basis");
    }
    let basis = ctx.hermite_basis(max_degree, t)?;
    let mut out = Rendered::new(Value::Null);
    out.csv_header = vec!["nu".into(), "H".into()];
    out.latex_header = vec![math("\\nu"), math("H_\\nu(t,x)")];
    for (nu, h) in &basis {
        push_row(&mut out, nu, "H", &[h]);
    }
    out.results = json!({
        "group": ctx.root_system().label(),
        "k": k_strings(ctx),
        "t": format_rational(t),
        "labels": basis.iter().map(|(nu, _)| nu.exponents().to_vec()).collect::<Vec<_>>(),
        "basis": basis.iter().map(|(_, h)| h.to_string()).collect::<Vec<_>>(),
    });
    Ok(out)
}

/// One table row. With an empty `name` the polynomials are the `R`, `S` pair.
fn push_row(out: &mut Rendered, nu: &MultiIndex, name: &str, polys: &[&Polynomial]) {
    let label = index_label(nu.exponents());
    if name.is_empty() {
        out.text.push(format!("R_{label} = {}", polys[0]));
        out.text.push(format!("S_{label} = {}", polys[1]));
    } else {
        out.text.push(format!("{name}_{label} = {}", polys[0]));
    }
    let mut row = vec![label];
    row.extend(polys.iter().map(|p| p.to_string()));
    out.csv_rows.push(row);
    let mut row = vec![math(index_latex(nu.exponents()))];
    row.extend(polys.iter().map(|p| math(p.to_latex())));
    out.latex_rows.push(row);
}

fn verify(ctx: &DunklContext, suites: &[Suite], cfg: &VerifyConfig) -> anyhow::Result<(Rendered, bool)> {
    let mut out = Rendered::new(Value::Null);
    out.csv_header = ["suite", "status", "cases", "failures", "identity", "counterexample"]
        .map(String::from)
        .to_vec();
    out.latex_header = ["suite", "status", "cases", "identity"].map(String::from).to_vec();
    out.text.push(format!(
        "{} k = {} t = {} degree ≤ {}",
        ctx.root_system().label(),
        k_label(ctx),
        format_rational(&cfg.t),
        cfg.max_degree
    ));
    let mut reports = Vec::new();
    let mut all_passed = true;
    for &suite in suites {
        let report = run_suite(ctx, suite, cfg)?;
        all_passed &= report.passed();
        out.text.push(report.to_string());
        let status = if report.passed() { "PASS" } else { "FAIL" };
        let counterexample = report.counterexample().map(|c| format!("{}: {}", c.case, c.detail));
        out.csv_rows.push(vec![
            suite.name().into(),
            status.into(),
            report.checked.to_string(),
            report.failures.len().to_string(),
            suite.identity().into(),
            counterexample.clone().unwrap_or_default(),
        ]);
        out.latex_rows.push(vec![
            suite.name().into(),
            status.into(),
            report.checked.to_string(),
            format!("\\verb|{}|", suite.identity()),
        ]);
        reports.push(json!({
            "suite": suite.name(),
            "identity": suite.identity(),
            "passed": report.passed(),
            "cases": report.checked,
            "failures": report.failures.len(),
            "counterexample": report.counterexample().map(|c| json!({"case": c.case, "detail": c.detail})),
        }));
    }
    out.results = json!({
        "group": ctx.root_system().label(),
        "k": k_strings(ctx),
        "t": format_rational(&cfg.t),
        "max_degree": cfg.max_degree,
        "passed": all_passed,
        "suites": reports,
    });
    Ok((out, all_passed))
}

fn eval(
    ctx: &DunklContext,
    quantity: Quantity,
    x: &[f64],
    y: &[f64],
    t: Option<f64>,
    imaginary: bool,
    cfg: &NumericEvalConfig,
) -> anyhow::Result<Rendered> {
    if imaginary && quantity != Quantity::Kernel {
        bail!("--imaginary applies to `eval kernel` only");
    }
    let need_t = || t.context("--t is required for this quantity");
    let fmt_point = |v: &[f64]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
    let (name, v): (String, KernelValue) = match quantity {
        Quantity::Kernel if imaginary => (
            format!("K(i({}), ({}))", fmt_point(x), fmt_point(y)),
            kernel_eval_imaginary(ctx, x, y, cfg)?,
        ),
        Quantity::Kernel => (
            format!("K(({}), ({}))", fmt_point(x), fmt_point(y)),
            kernel_eval(ctx, x, y, cfg)?,
        ),
        Quantity::Heat => {
            let t = need_t()?;
            (
                format!("Γ(({}), ({}), {t})", fmt_point(x), fmt_point(y)),
                heat_kernel_eval(ctx, x, y, t, cfg)?,
            )
        }
        Quantity::Theta => {
            let t = need_t()?;
            (
                format!("θ_{t}(({}), ({}))", fmt_point(x), fmt_point(y)),
                density_theta(ctx, t, x, y, cfg)?,
            )
        }
    };
    let mut out = Rendered::new(json!({
        "quantity": format!("{quantity:?}").to_lowercase(),
        "value": {"re": v.value.re, "im": v.value.im},
        "error_bound": v.error_bound,
        "degree": v.degree,
    }));
    let value = if imaginary {
        let sign = if v.value.im.is_sign_negative() { '-' } else { '+' };
        format!("{} {sign} {}i", v.value.re, v.value.im.abs())
    } else {
        v.value.re.to_string()
    };
    out.text.push(format!(
        "{name} = {value} ± {:e} (series degree {})",
        v.error_bound, v.degree
    ));
    out.csv_header = ["quantity", "re", "im", "error_bound", "degree"]
        .map(String::from)
        .to_vec();
    out.csv_rows.push(vec![
        format!("{quantity:?}").to_lowercase(),
        float(v.value.re),
        float(v.value.im),
        float(v.error_bound),
        v.degree.to_string(),
    ]);
    out.latex_header = ["quantity", "value", "error bound"].map(String::from).to_vec();
    out.latex_rows
        .push(vec![format!("\\verb|{name}|"), value, format!("{:e}", v.error_bound)]);
    Ok(out)
}
