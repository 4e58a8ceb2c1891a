//! The `quasimix` command line.
//!
//! Exit codes: 0 success, 1 failed assertion or construction error, 2 usage
//! or parse error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::characters::table::format_complex;
use crate::characters::GroupData;
use crate::error::Error;
use crate::group::{parse_group_spec, GroupSpec};
use crate::mixing::{
    check_zeta_quasirandom_relation, count_progressions, count_progressions_substituted,
    coxeter_number, gowers_pair_count, rep_degree_sum, run_mixing_experiment, theorem_bound,
    witten_zeta, ElementSet, MixingReport, ZetaValue,
};
use crate::report::{group_json, round12, sig12, CheckOutcome};
use crate::sampling::{bernoulli_subset, split_seed};
use crate::verify::run_verification;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker count (0 = one per core).
pub const THREADS_ENV: &str = "QUASIMIX_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "quasimix", version, about = "Progression counts and mixing bounds on finite groups")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Group spec: A<n>, S<n>, C<n>, SL(d,q), PSL(d,q) or perm:<cycles>;...
    #[arg(long = "group", global = true)]
    pub groups: Vec<String>,

    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Inclusion probability for random subsets, in [0, 1].
    #[arg(long, global = true, default_value_t = 0.5, value_parser = parse_density)]
    pub density: f64,

    /// Number of random trials (defaults depend on the command).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,

    /// Comma-separated zeta exponents.
    #[arg(long = "s", global = true, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 2.0])]
    pub s_values: Vec<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Order, class count, quasirandomness degree, zeta(1) and the bound.
    Info,
    /// Conjugacy classes with sizes and centralizer orders.
    Classes,
    /// The complex character table.
    Chartable,
    /// Witten zeta values at the --s exponents.
    Zeta,
    /// Exact progression counts for random subsets.
    Count,
    /// Run the identity and inequality suite.
    Verify,
    /// Mixing experiments over one or more groups.
    MixBench,
}

fn parse_density(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("density {v} outside [0, 1]"))
    }
}

struct Outcome {
    body: String,
    code: i32,
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    let specs = match parse_specs(&cfg) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match cfg.command {
        Command::MixBench => cmd_mix_bench(&cfg, &specs, stderr),
        cmd => match GroupData::build(&specs[0], cfg.seed) {
            Ok(data) => match cmd {
                Command::Info => cmd_info(&cfg, &data),
                Command::Classes => cmd_classes(&cfg, &data),
                Command::Chartable => cmd_chartable(&cfg, &data),
                Command::Zeta => cmd_zeta(&cfg, &data),
                Command::Count => cmd_count(&cfg, &data),
                Command::Verify => cmd_verify(&cfg, &data, stderr),
                Command::MixBench => unreachable!(),
            },
            Err(e) => {
                let _ = writeln!(stderr, "error: {}: {e}", specs[0]);
                return EXIT_FAILURE;
            }
        },
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => stdout.write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_FAILURE;
    }
    outcome.code
}

fn parse_specs(cfg: &CliConfig) -> Result<Vec<GroupSpec>, Error> {
    if cfg.groups.is_empty() {
        return Err(Error::InvalidArgument("--group is required".into()));
    }
    if cfg.command != Command::MixBench && cfg.groups.len() > 1 {
        return Err(Error::InvalidArgument(
            "--group may be repeated only for mix-bench".into(),
        ));
    }
    cfg.groups.iter().map(|g| parse_group_spec(g)).collect()
}

fn json_body(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

fn csv_body(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn ok(body: String) -> Outcome {
    Outcome { body, code: EXIT_OK }
}

fn zeta_values(cfg: &CliConfig, data: &GroupData) -> Vec<ZetaValue> {
    cfg.s_values.iter().map(|&s| witten_zeta(&data.table, s)).collect()
}

fn cmd_info(cfg: &CliConfig, data: &GroupData) -> Outcome {
    let t = &data.table;
    let d = t.quasirandomness_degree().unwrap_or(0);
    let zeta1 = witten_zeta(t, 1.0);
    let fields: Vec<(&str, String)> = vec![
        ("group", data.group.spec().to_string()),
        ("order", data.group.order().to_string()),
        ("classes", data.classes.class_count().to_string()),
        ("quasirandomness", d.to_string()),
        ("rep_degree_sum", sig12(rep_degree_sum(t))),
        ("zeta_1", sig12(zeta1.value)),
        ("theorem_bound", sig12(theorem_bound(t))),
    ];
    match cfg.format {
        Format::Text => ok(fields
            .iter()
            .map(|(k, v)| format!("{k:<16} {v}\n"))
            .collect()),
        Format::Csv => ok(csv_body(
            &["key", "value"],
            fields.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect(),
        )),
        Format::Json => ok(json_body(&group_json(data, &[zeta1], &[], &[]))),
    }
}

fn cmd_classes(cfg: &CliConfig, data: &GroupData) -> Outcome {
    let (g, c) = (&data.group, &data.classes);
    let rows: Vec<Vec<String>> = (0..c.class_count())
        .map(|i| {
            vec![
                i.to_string(),
                g.format(c.representative(i)),
                c.size(i).to_string(),
                c.centralizer_order(i).to_string(),
                c.inverse_class(i).to_string(),
            ]
        })
        .collect();
    match cfg.format {
        Format::Text => {
            let mut s = format!("{:>5} {:>6} {:>11} {:>7}  rep\n", "class", "size", "centralizer", "inverse");
            for r in &rows {
                s += &format!("{:>5} {:>6} {:>11} {:>7}  {}\n", r[0], r[2], r[3], r[4], r[1]);
            }
            ok(s)
        }
        Format::Csv => ok(csv_body(
            &["class", "rep", "size", "centralizer_order", "inverse_class"],
            rows,
        )),
        Format::Json => ok(json_body(&group_json(data, &[], &[], &[]))),
    }
}

fn cmd_chartable(cfg: &CliConfig, data: &GroupData) -> Outcome {
    let t = &data.table;
    match cfg.format {
        Format::Csv => {
            let mut buf = Vec::new();
            t.write_csv(&data.group, &data.classes, &mut buf)
                .expect("in-memory write");
            ok(String::from_utf8(buf).expect("utf-8"))
        }
        Format::Text => {
            let k = t.irrep_count();
            let mut s = format!("{:>6}", "degree");
            for i in 0..k {
                s += &format!(" {:>24}", format!("[{}]", data.classes.size(i)));
            }
            s.push('\n');
            for r in 0..k {
                s += &format!("{:>6}", t.degree(r));
                for i in 0..k {
                    s += &format!(" {:>24}", format_complex(t.value(r, i)));
                }
                s.push('\n');
            }
            ok(s)
        }
        Format::Json => {
            let mut v = group_json(data, &[], &[], &[]);
            let chars: Vec<Vec<String>> = (0..t.irrep_count())
                .map(|r| t.row(r).iter().map(|&z| format_complex(z)).collect())
                .collect();
            v["characters"] = json!(chars);
            ok(json_body(&v))
        }
    }
}

fn cmd_zeta(cfg: &CliConfig, data: &GroupData) -> Outcome {
    let zeta = zeta_values(cfg, data);
    let checks: Vec<CheckOutcome> = [1.0 / 3.0, 0.5, 1.0]
        .iter()
        .filter_map(|&delta| check_zeta_quasirandom_relation(&data.table, delta).ok())
        .map(|r| CheckOutcome::new(format!("zeta_relation_delta_{}", sig12(r.delta)), r.pass, r.lhs, r.rhs))
        .collect();
    let coxeter = match data.group.spec() {
        GroupSpec::SL { d, .. } | GroupSpec::PSL { d, .. } => coxeter_number(*d).ok(),
        _ => None,
    };
    match cfg.format {
        Format::Text => {
            let mut s = format!("{:>8} {:>20} {:>20}\n", "s", "zeta", "zeta-1");
            for z in &zeta {
                s += &format!("{:>8} {:>20} {:>20}\n", sig12(z.s), sig12(z.value), sig12(z.deficit));
            }
            if let Some(h) = coxeter {
                s += &format!("coxeter_number {h}\n");
            }
            for c in &checks {
                s += &format!("{} {} <= {} {}\n", c.name, sig12(c.lhs), sig12(c.rhs), pass_word(c.pass));
            }
            ok(s)
        }
        Format::Csv => ok(csv_body(
            &["s", "value", "deficit"],
            zeta.iter()
                .map(|z| vec![sig12(z.s), sig12(z.value), sig12(z.deficit)])
                .collect(),
        )),
        Format::Json => {
            let mut v = group_json(data, &zeta, &[], &checks);
            if let Some(h) = coxeter {
                v["coxeter_number"] = json!(h);
            }
            ok(json_body(&v))
        }
    }
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_count(cfg: &CliConfig, data: &GroupData) -> Outcome {
    let g = &data.group;
    let n = g.order();
    let d = data.table.quasirandomness_degree().unwrap_or(1);
    let trials = cfg.trials.unwrap_or(1) as usize;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut agree = true;
    for t in 0..trials {
        let seed = split_seed(cfg.seed, t as u64);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let sets: Vec<ElementSet> = (0..3)
            .map(|_| ElementSet::new(n, bernoulli_subset(n, cfg.density, &mut rng)))
            .collect();
        let r = count_progressions(g, &sets[0], &sets[1], &sets[2]);
        let alt = count_progressions_substituted(g, &sets[0], &sets[1], &sets[2]);
        let p = gowers_pair_count(g, &sets[0], &sets[1], &sets[2], d);
        agree &= r.count == alt.count;
        rows.push(vec![
            seed.to_string(),
            sets[0].len().to_string(),
            sets[1].len().to_string(),
            sets[2].len().to_string(),
            r.count.to_string(),
            alt.count.to_string(),
            sig12(r.expected.value()),
            sig12(r.discrepancy),
            p.count.to_string(),
            sig12(p.expected.value()),
            sig12(p.bound),
        ]);
        records.push(crate::mixing::TrialRecord {
            seed,
            sizes: [sets[0].len(), sets[1].len(), sets[2].len()],
            count: r.count,
            expected: r.expected.value(),
            discrepancy: r.discrepancy,
            normalized_discrepancy: r.discrepancy / (n * n) as f64,
            gowers_count: p.count,
            gowers_expected: p.expected.value(),
            gowers_discrepancy: p.discrepancy,
            gowers_bound: p.bound,
        });
    }
    let header = [
        "seed", "size_a", "size_b", "size_c", "count", "count_substituted", "expected",
        "discrepancy", "pair_count", "pair_expected", "pair_bound",
    ];
    let code = if agree { EXIT_OK } else { EXIT_FAILURE };
    let body = match cfg.format {
        Format::Csv => csv_body(&header, rows),
        Format::Text => {
            let mut s = header.join(" ") + "\n";
            for r in rows {
                s += &(r.join(" ") + "\n");
            }
            s
        }
        Format::Json => {
            let check = CheckOutcome::new("count_oracle_agreement", agree, 0.0, 0.0);
            json_body(&group_json(data, &[], &records, &[check]))
        }
    };
    Outcome { body, code }
}

fn cmd_verify(cfg: &CliConfig, data: &GroupData, stderr: &mut dyn Write) -> Outcome {
    let trials = cfg.trials.unwrap_or(50) as usize;
    let checks = run_verification(data, cfg.seed, trials);
    let failed = checks.iter().find(|c| !c.pass);
    if let Some(c) = failed {
        let _ = writeln!(stderr, "check failed: {}", c.name);
    }
    let code = if failed.is_some() { EXIT_FAILURE } else { EXIT_OK };
    let body = match cfg.format {
        Format::Json => json_body(&group_json(data, &[witten_zeta(&data.table, 1.0)], &[], &checks)),
        Format::Csv => csv_body(
            &["name", "pass", "lhs", "rhs"],
            checks
                .iter()
                .map(|c| vec![c.name.clone(), c.pass.to_string(), sig12(c.lhs), sig12(c.rhs)])
                .collect(),
        ),
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                s += &format!("{:<4} {:<28} lhs={} rhs={}\n", pass_word(c.pass), c.name, sig12(c.lhs), sig12(c.rhs));
            }
            s
        }
    };
    Outcome { body, code }
}

fn mixing_json(data: &GroupData, report: &MixingReport) -> Value {
    let check = CheckOutcome::new(
        "theorem_bound",
        report.pass,
        report.max_normalized_discrepancy,
        report.theorem_bound,
    );
    let mut v = group_json(data, &[witten_zeta(&data.table, 1.0)], &report.trials, &[check]);
    v["gowers"] = json!({
        "implied_constant": 1,
        "max_ratio": round12(report.gowers_max_ratio),
        "within_bound": report.gowers_pass,
    });
    v["density"] = json!(round12(report.density));
    v
}

fn cmd_mix_bench(cfg: &CliConfig, specs: &[GroupSpec], stderr: &mut dyn Write) -> Outcome {
    let trials = cfg.trials.unwrap_or(200) as usize;
    let mut code = EXIT_OK;
    let mut reports = Vec::new();
    for spec in specs {
        let result = GroupData::build(spec, cfg.seed).and_then(|data| {
            let r = run_mixing_experiment(&data, cfg.density, trials, cfg.seed)?;
            Ok((data, r))
        });
        match result {
            Ok((data, r)) => {
                if !r.pass {
                    let _ = writeln!(stderr, "check failed: theorem_bound on {spec}");
                    code = EXIT_FAILURE;
                }
                reports.push((data, r));
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {spec}: {e}");
                code = EXIT_FAILURE;
            }
        }
    }
    let body = match cfg.format {
        Format::Json => json_body(&Value::Array(
            reports.iter().map(|(d, r)| mixing_json(d, r)).collect(),
        )),
        Format::Csv => {
            let mut rows = Vec::new();
            for (_, r) in &reports {
                for t in &r.trials {
                    rows.push(vec![
                        r.group.clone(),
                        t.seed.to_string(),
                        t.sizes[0].to_string(),
                        t.sizes[1].to_string(),
                        t.sizes[2].to_string(),
                        t.count.to_string(),
                        sig12(t.expected),
                        sig12(t.normalized_discrepancy),
                        sig12(r.theorem_bound),
                        t.gowers_count.to_string(),
                        sig12(t.gowers_bound),
                    ]);
                }
            }
            csv_body(
                &[
                    "group", "seed", "size_a", "size_b", "size_c", "count", "expected",
                    "normalized_discrepancy", "theorem_bound", "pair_count", "pair_bound",
                ],
                rows,
            )
        }
        Format::Text => {
            let mut s = format!(
                "{:<10} {:>8} {:>4} {:>16} {:>16} {:>16} {:>16} {:>5}\n",
                "group", "order", "D", "sum_1/d", "max_norm_disc", "theorem_bound", "pair_max_ratio", "pass"
            );
            for (_, r) in &reports {
                s += &format!(
                    "{:<10} {:>8} {:>4} {:>16} {:>16} {:>16} {:>16} {:>5}\n",
                    r.group,
                    r.order,
                    r.quasirandomness,
                    sig12(r.rep_degree_sum),
                    sig12(r.max_normalized_discrepancy),
                    sig12(r.theorem_bound),
                    sig12(r.gowers_max_ratio),
                    pass_word(r.pass)
                );
            }
            s
        }
    };
    Outcome { body, code }
}
