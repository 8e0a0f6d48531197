use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qsw_core::harness::{
    errata, eval, EvalTarget, find, registry, resolve_garrett_convention, verify_many, with_resolved_convention, GarrettConvention,
    HResult, ParamKind, Report, VerifyConfig,
};
use qsw_core::Rational;

const PASS: u8 = 0;
const FAIL: u8 = 1;
const ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "qsw", version, about = "Exact q-series identity checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print identity ids and descriptions.
    List {
        /// Include the printed variants that are expected to fail.
        #[arg(long)]
        errata: bool,
    },
    /// Check one identity, or `all` of them.
    Verify {
        id: String,
        #[arg(long)]
        qmax: Option<i64>,
        /// Degree cap for every non-q variable.
        #[arg(long)]
        degree: Option<i64>,
        /// Cap for one variable, `var=N`. Repeatable.
        #[arg(long = "cap", value_parser = parse_cap)]
        caps: Vec<(String, i64)>,
        /// Bind a parameter to a rational, `var=p/r`. Repeatable.
        #[arg(long = "bind", value_parser = parse_binding)]
        bindings: Vec<(String, Rational)>,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Order of the expansion variable in generating functions.
        #[arg(long)]
        sum_order: Option<i64>,
        /// Pin the Garrett sign convention instead of measuring it.
        #[arg(long)]
        convention: Option<Convention>,
        #[arg(long)]
        json: bool,
        /// Leave elapsed times out so output is byte-stable.
        #[arg(long)]
        no_timing: bool,
    },
    /// Print a polynomial or series.
    Eval {
        /// sw, sw-star, rs, rq, garrett-a or garrett-b
        what: EvalTarget,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 25)]
        qmax: i64,
        #[arg(long)]
        json: bool,
    },
    /// Decide which sign makes the Garrett expansion agree with the direct sum.
    GarrettConvention {
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        #[arg(long, default_value_t = 40)]
        qmax: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check the printed variants that differ from the verified forms.
    Errata {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Printed,
    Signed,
}

fn split_assignment(s: &str) -> Result<(String, &str), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected var=value, got `{s}`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("missing variable name in `{s}`"));
    }
    Ok((name.to_string(), value.trim()))
}

fn parse_cap(s: &str) -> Result<(String, i64), String> {
    let (name, value) = split_assignment(s)?;
    let n: i64 = value.parse().map_err(|_| format!("cap for {name} is not an integer: `{value}`"))?;
    if n < 0 {
        return Err(format!("cap for {name} is negative"));
    }
    Ok((name, n))
}

fn parse_binding(s: &str) -> Result<(String, Rational), String> {
    let (name, value) = split_assignment(s)?;
    let r: Rational = value.parse().map_err(|e| format!("{e}"))?;
    Ok((name, r))
}

/// Writes to stdout, exiting quietly if the reader has gone away.
macro_rules! out {
    ($($arg:tt)*) => {{
        let mut stdout = std::io::stdout().lock();
        if writeln!(stdout, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

fn report_json(id: &str, r: &HResult<Report>) -> String {
    match r {
        Ok(rep) => rep.to_json(),
        Err(e) => serde_json::json!({ "id": id, "error": e.to_string() }).to_string(),
    }
}

fn json_array(items: Vec<String>) -> String {
    format!("[{}]", items.join(","))
}

fn print_reports(results: &[(String, HResult<Report>)], json: bool) -> u8 {
    let mut code = PASS;
    for (_, r) in results {
        match r {
            Ok(rep) if !rep.pass => code = code.max(FAIL),
            Ok(_) => {}
            Err(_) => code = ERROR,
        }
    }
    if json {
        let mut items: Vec<String> = results.iter().map(|(id, r)| report_json(id, r)).collect();
        if items.len() == 1 {
            out!("{}", items.remove(0));
        } else {
            out!("{}", json_array(items));
        }
    } else {
        for (id, r) in results {
            match r {
                Ok(rep) => out!("{}", rep.summary_line()),
                Err(e) => out!("ERROR {id}: {e}"),
            }
        }
        if results.len() > 1 {
            let passed = results.iter().filter(|(_, r)| matches!(r, Ok(rep) if rep.pass)).count();
            out!("{passed}/{} passed", results.len());
        }
    }
    code
}

fn cmd_list(with_errata: bool) -> u8 {
    let mut specs = registry();
    if with_errata {
        specs.extend(errata());
    }
    for s in specs {
        let mut notes = Vec::new();
        let randoms: Vec<String> = s
            .params()
            .into_iter()
            .filter(|p| p.kind == ParamKind::Rational)
            .map(|p| p.name)
            .collect();
        if !randoms.is_empty() {
            notes.push(format!("rational: {}", randoms.join(", ")));
        }
        if let Some(c) = s.constraint {
            notes.push(c.to_string());
        }
        if let Some(e) = s.expansion {
            notes.push(format!("expansion in {e}"));
        }
        if s.uses_convention {
            notes.push("Garrett convention".to_string());
        }
        let notes = if notes.is_empty() { String::new() } else { format!("  [{}]", notes.join("; ")) };
        out!("{:<24}{}{}", s.id, s.description, notes);
    }
    PASS
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    id: &str,
    qmax: Option<i64>,
    degree: Option<i64>,
    caps: Vec<(String, i64)>,
    bindings: Vec<(String, Rational)>,
    trials: u32,
    seed: u64,
    sum_order: Option<i64>,
    convention: Option<Convention>,
    json: bool,
    no_timing: bool,
) -> u8 {
    if trials == 0 {
        eprintln!("error: --trials must be at least 1");
        return ERROR;
    }
    let cfg = VerifyConfig {
        q_max: qmax,
        degree,
        sum_order,
        caps: caps.into_iter().collect::<BTreeMap<_, _>>(),
        bindings: bindings.into_iter().collect(),
        trials,
        seed,
        convention: convention.map(|c| match c {
            Convention::Printed => GarrettConvention::Printed,
            Convention::Signed => GarrettConvention::Signed,
        }),
        timing: !no_timing,
    };
    let specs = if id == "all" {
        registry()
    } else {
        match find(id) {
            Ok(s) => vec![s],
            Err(e) => {
                eprintln!("error: {e}");
                return ERROR;
            }
        }
    };
    let cfg = with_resolved_convention(&cfg);
    let results = verify_many(&specs, &cfg);
    let tagged: Vec<(String, HResult<Report>)> = specs.iter().map(|s| s.id.to_string()).zip(results).collect();
    print_reports(&tagged, json)
}

fn cmd_eval(what: EvalTarget, n: u32, qmax: i64, json: bool) -> u8 {
    let result = eval(what, n, qmax);
    match result {
        Ok(s) => {
            out!("{}", if json { s.to_json() } else { s.to_text() });
            PASS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ERROR
        }
    }
}

fn cmd_garrett(kmax: u32, qmax: i64, json: bool) -> u8 {
    if kmax < 2 {
        eprintln!("error: --kmax must be at least 2");
        return ERROR;
    }
    let res = resolve_garrett_convention(kmax, qmax);
    if json {
        let rows = serde_json::to_string(&res.rows).expect("rows json");
        out!("{{\"report\":{},\"rows\":{}}}", res.report.to_json(), rows);
    } else {
        out!("{:<4}{:<34}{}", "k", "printed", "signed");
        for row in &res.rows {
            let cell = |w: &Option<qsw_core::harness::WitnessReport>| match w {
                None => "ok".to_string(),
                Some(w) => format!("fails at {}: {} vs {}", w.monomial, w.lhs, w.rhs),
            };
            out!("{:<4}{:<34}{}", row.k, cell(&row.printed), cell(&row.signed));
        }
        if let Some((k, w)) = res.printed_discrepancy() {
            out!(
                "printed form disagrees first at k = {k}: direct sum {} at {}, expansion {}",
                w.lhs, w.monomial, w.rhs
            );
        }
        match res.convention {
            Some(c) => out!("selected convention: {c} (qMax {qmax}, k <= {kmax})"),
            None => out!("no single convention holds for k <= {kmax}"),
        }
    }
    if res.convention.is_some() {
        PASS
    } else {
        FAIL
    }
}

fn cmd_errata(json: bool, no_timing: bool) -> u8 {
    let specs = errata();
    let cfg = with_resolved_convention(&VerifyConfig {
        timing: !no_timing,
        ..VerifyConfig::default()
    });
    let results = verify_many(&specs, &cfg);
    let mut refuted = 0;
    let mut values = Vec::new();
    for (s, r) in specs.iter().zip(&results) {
        let (line, ok) = match r {
            Ok(rep) if !rep.pass => (format!("refuted  {}", rep.summary_line()), true),
            Ok(rep) => (format!("HOLDS    {}", rep.summary_line()), false),
            Err(e) => (format!("refuted  {} (cannot be built: {e})", s.id), true),
        };
        if ok {
            refuted += 1;
        }
        if json {
            values.push(report_json(s.id, r));
        } else {
            out!("{line}");
        }
    }
    if json {
        out!("{}", json_array(values));
    } else {
        out!("{refuted}/{} printed variants refuted", specs.len());
    }
    if refuted == specs.len() {
        PASS
    } else {
        FAIL
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::List { errata } => cmd_list(errata),
        Command::Verify {
            id,
            qmax,
            degree,
            caps,
            bindings,
            trials,
            seed,
            sum_order,
            convention,
            json,
            no_timing,
        } => cmd_verify(
            &id, qmax, degree, caps, bindings, trials, seed, sum_order, convention, json, no_timing,
        ),
        Command::Eval { what, n, qmax, json } => cmd_eval(what, n, qmax, json),
        Command::GarrettConvention { kmax, qmax, json } => cmd_garrett(kmax, qmax, json),
        Command::Errata { json, no_timing } => cmd_errata(json, no_timing),
    };
    ExitCode::from(code)
}
