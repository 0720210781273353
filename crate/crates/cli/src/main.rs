//! Command-line front door: RSK, Kazhdan-Lusztig polynomials, basis
//! expansions, dominance queries, cells and the verification suites.
//!
//! Exit codes: 0 success (and all verifications passed), 1 verification
//! failures, 2 bad input, 3 rank cap exceeded, 4 internal consistency
//! failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hecke_core::caps::RankCapExceeded;
use hecke_core::cells::{annotated_cells, preorder, Side};
use hecke_core::coeff::format_q_poly;
use hecke_core::hecke::{
    expand_pair_basis, expand_parabolic, expand_perm_basis, AnyElement, HeckeContext,
    HeckeElement, HeckeError, PairBasis, PermBasis,
};
use hecke_core::symgroup::Permutation;
use hecke_core::tableaux::{pair_order, rsk, StandardTableau, TableauPair};
use hecke_core::verify::{run_suites, Suite, VerifyError};
use hecke_core::{LaurentPoly, Partition, RationalFn};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact Hecke-algebra and tableau combinatorics queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct PermInput {
    /// Rank of the symmetric group.
    #[arg(long)]
    n: usize,
    /// Generator subscripts applied left to right, e.g. "1 3 4".
    #[arg(long, conflicts_with = "oneline")]
    word: Option<String>,
    /// One-line notation, e.g. "2 1 4 5 3 6".
    #[arg(long)]
    oneline: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Insertion and recording tableaux of a permutation.
    Rsk {
        #[command(flatten)]
        perm: PermInput,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The Kazhdan-Lusztig polynomial P_{y,w} in q = v^2.
    Klpoly {
        #[arg(long)]
        n: usize,
        /// Permutation literal: "word:..." or "oneline:...".
        #[arg(long)]
        y: String,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The mu coefficient of a pair.
    Mu {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        z: String,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Coordinates of an element in a chosen basis.
    BasisExpand {
        #[arg(long)]
        n: usize,
        /// Element literal "T:...", "Cp:..." or "C:..." with a permutation
        /// literal after the tag.
        #[arg(long, conflicts_with = "input_json")]
        element: Option<String>,
        /// A full element in wire JSON, as emitted by this command.
        #[arg(long)]
        input_json: Option<String>,
        /// t | cprime | c | murphy | dual-murphy | seminormal | dual-seminormal.
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Coordinates of C'_w over the parabolic basis {T_u C'_y}.
    ParabolicExpand {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Dominance comparison of partitions, tableaux, or tableau pairs.
    Dominance {
        /// Partition, e.g. "3 1".
        #[arg(long, requires = "b")]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// Tableau JSON {"shape":[...],"rows":[[...]]}.
        #[arg(long, requires = "tb")]
        ta: Option<String>,
        #[arg(long)]
        tb: Option<String>,
        /// Tableau pair JSON `{"s": <tableau>, "t": <tableau>}`.
        #[arg(long, requires = "pair_b")]
        pair_a: Option<String>,
        #[arg(long)]
        pair_b: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The subtableau of entries <= m.
    Restrict {
        /// Tableau JSON; alternatively give --n with --word/--oneline to
        /// restrict the recording tableau of a permutation.
        #[arg(long)]
        tableau: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        oneline: Option<String>,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Kazhdan-Lusztig cells of a rank.
    Cells {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "left")]
        side: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run verification suites.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Highest rank to sweep (default: each suite's own cap).
        #[arg(long)]
        n_max: Option<usize>,
        /// Write the JSON report here as well.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Worker threads for the sweeps.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum CliError {
    Usage(String),
    RankCap(String),
    Internal(String),
    Io(String),
}

impl From<RankCapExceeded> for CliError {
    fn from(e: RankCapExceeded) -> Self {
        CliError::RankCap(e.to_string())
    }
}

impl From<HeckeError> for CliError {
    fn from(e: HeckeError) -> Self {
        match e {
            HeckeError::RankCap(c) => CliError::RankCap(c.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::RankCap(c) => CliError::RankCap(c.to_string()),
            VerifyError::UnknownSuite(s) => CliError::Usage(format!("unknown suite {s:?}")),
            VerifyError::Hecke(h) => h.into(),
        }
    }
}

fn parse_numbers(s: &str) -> Result<Vec<usize>, CliError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("expected whitespace-separated integers, got {tok:?}")))
        })
        .collect()
}

fn perm_from_parts(n: usize, word: Option<&str>, oneline: Option<&str>) -> Result<Permutation, CliError> {
    match (word, oneline) {
        (Some(w), None) => {
            Permutation::from_word(n, &parse_numbers(w)?).map_err(|e| CliError::Usage(e.to_string()))
        }
        (None, Some(o)) => {
            let images = parse_numbers(o)?;
            if images.len() != n {
                return Err(CliError::Usage(format!(
                    "one-line notation has {} entries but n = {n}",
                    images.len()
                )));
            }
            Permutation::from_one_line(images).map_err(|e| CliError::Usage(e.to_string()))
        }
        _ => Err(CliError::Usage("give exactly one of --word or --oneline".into())),
    }
}

/// Parses "word:1 3 4" or "oneline:2 1 4 5 3 6".
fn perm_literal(n: usize, lit: &str) -> Result<Permutation, CliError> {
    if let Some(rest) = lit.strip_prefix("word:") {
        perm_from_parts(n, Some(rest), None)
    } else if let Some(rest) = lit.strip_prefix("oneline:") {
        perm_from_parts(n, None, Some(rest))
    } else {
        Err(CliError::Usage(format!(
            "permutation literal must start with word: or oneline:, got {lit:?}"
        )))
    }
}

fn tableau_json(s: &str) -> Result<StandardTableau, CliError> {
    let t: StandardTableau =
        serde_json::from_str(s).map_err(|e| CliError::Usage(format!("bad tableau JSON: {e}")))?;
    if !t.is_standard() {
        return Err(CliError::Usage(format!(
            "tableau entries must be exactly 1..={}",
            t.size()
        )));
    }
    Ok(t)
}

fn tableau_text(t: &StandardTableau) -> String {
    t.rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn print_value(format: Format, v: &serde_json::Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => println!("{}", text()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Rsk { perm, format } => {
            let w = perm_from_parts(perm.n, perm.word.as_deref(), perm.oneline.as_deref())?;
            let pair = rsk(&w);
            let value = json!({
                "n": perm.n,
                "w": w.one_line(),
                "p": pair.first(),
                "q": pair.second(),
            });
            print_value(format, &value, || {
                format!("P:\n{}\nQ:\n{}", tableau_text(pair.first()), tableau_text(pair.second()))
            });
        }
        Command::Klpoly { n, y, w, format } => {
            let y = perm_literal(n, &y)?;
            let w = perm_literal(n, &w)?;
            let ctx = HeckeContext::shared(n)?;
            let coeffs = ctx.kl().kl_polynomial(&y, &w);
            let pretty = format_q_poly(&coeffs);
            let value = json!({
                "y": y.one_line(),
                "w": w.one_line(),
                "coeffs": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "pretty": pretty,
            });
            print_value(format, &value, || pretty.clone());
        }
        Command::Mu { n, z, w, format } => {
            let z = perm_literal(n, &z)?;
            let w = perm_literal(n, &w)?;
            let ctx = HeckeContext::shared(n)?;
            let mu = ctx.kl().mu(&z, &w);
            let value = json!({
                "z": z.one_line(),
                "w": w.one_line(),
                "mu": mu.to_string(),
            });
            print_value(format, &value, || mu.to_string());
        }
        Command::BasisExpand { n, element, input_json, target, format } => {
            run_basis_expand(n, element.as_deref(), input_json.as_deref(), &target, format)?;
        }
        Command::ParabolicExpand { n, w, m, format } => {
            if m < 1 || m > n {
                return Err(CliError::Usage(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
            }
            let w = perm_literal(n, &w)?;
            let ctx = HeckeContext::shared(n)?;
            let coords = expand_parabolic(&ctx, &w, m)?;
            let terms: Vec<_> = coords
                .iter()
                .map(|((u, y), c)| {
                    json!({"u": u.one_line(), "y": y.one_line(), "coeff": c})
                })
                .collect();
            let value = json!({"n": n, "w": w.one_line(), "m": m, "terms": terms});
            print_value(format, &value, || {
                coords
                    .iter()
                    .map(|((u, y), c)| format!("u = {u}, y = {y}: {c}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        Command::Dominance { a, b, ta, tb, pair_a, pair_b, format } => {
            run_dominance(a, b, ta, tb, pair_a, pair_b, format)?;
        }
        Command::Restrict { tableau, n, word, oneline, m, format } => {
            let t = match (tableau, n) {
                (Some(js), None) => tableau_json(&js)?,
                (None, Some(n)) => {
                    let w = perm_from_parts(n, word.as_deref(), oneline.as_deref())?;
                    rsk(&w).second().clone()
                }
                _ => {
                    return Err(CliError::Usage(
                        "give either --tableau or --n with --word/--oneline".into(),
                    ))
                }
            };
            let restricted = t
                .restrict(m)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let value = serde_json::to_value(&restricted).expect("serializable");
            print_value(format, &value, || tableau_text(&restricted));
        }
        Command::Cells { n, side, format } => {
            let side: Side = side.parse().map_err(CliError::Usage)?;
            let ctx = HeckeContext::shared(n)?;
            let pre = preorder(ctx.kl(), side)?;
            let cells = annotated_cells(&pre);
            let value = json!({"n": n, "side": side, "cells": cells});
            print_value(format, &value, || {
                cells
                    .iter()
                    .map(|c| {
                        let members = c
                            .members
                            .iter()
                            .map(|w| format!("{w}"))
                            .collect::<Vec<_>>()
                            .join(" ");
                        format!("shape {:?}: {members}", c.shape)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        Command::Verify { suite, n_max, out, jobs, format } => {
            if let Some(j) = jobs {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
            }
            let selection = if suite == "all" { None } else { Some(Suite::parse(&suite)?) };
            let reports = run_suites(selection, n_max)?;
            let all_pass = reports.iter().all(|r| r.passed());
            let value = serde_json::to_value(&reports).expect("serializable");
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&value).expect("serializable"))
                    .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
            }
            print_value(format, &value, || {
                reports
                    .iter()
                    .map(|r| {
                        format!(
                            "{:24} n={} checked={:8} {} ({} ms)",
                            r.suite,
                            r.n,
                            r.checked,
                            if r.passed() { "PASS" } else { "FAIL" },
                            r.elapsed_ms
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            if !all_pass {
                for r in reports.iter().filter(|r| !r.passed()) {
                    for f in &r.failures {
                        eprintln!("[{} n={}] {}: expected {}, observed {} (replay: {})",
                            r.suite, r.n, f.case, f.expected, f.observed, f.replay);
                    }
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_basis_expand(
    n: usize,
    element: Option<&str>,
    input_json: Option<&str>,
    target: &str,
    format: Format,
) -> Result<(), CliError> {
    let ctx = HeckeContext::shared(n)?;
    // resolve the element; remember whether it came from the integral ring
    let (rational, integral_input, echo): (HeckeElement<RationalFn>, bool, serde_json::Value) =
        match (element, input_json) {
            (Some(lit), None) => {
                let (tag, rest) = lit
                    .split_once(':')
                    .ok_or_else(|| CliError::Usage(format!("element literal needs a basis tag: {lit:?}")))?;
                let w = perm_literal(n, rest)?;
                let elt: HeckeElement<LaurentPoly> = match tag {
                    "T" => HeckeElement::t_basis(&w),
                    "Cp" => (*ctx.kl().cprime(&w)).clone(),
                    "C" => ctx.kl().c_twisted(&w),
                    other => {
                        return Err(CliError::Usage(format!(
                            "unknown element tag {other:?} (expected T, Cp or C)"
                        )))
                    }
                };
                let echo = elt.to_json();
                (elt.to_rational(), true, echo)
            }
            (None, Some(js)) => {
                let value: serde_json::Value = serde_json::from_str(js)
                    .map_err(|e| CliError::Usage(format!("bad element JSON: {e}")))?;
                let any = AnyElement::from_json(&value).map_err(CliError::Usage)?;
                if any.n() != n {
                    return Err(CliError::Usage(format!(
                        "element rank {} does not match --n {n}",
                        any.n()
                    )));
                }
                match any {
                    AnyElement::Integral(e) => {
                        let echo = e.to_json();
                        (e.to_rational(), true, echo)
                    }
                    AnyElement::Rational(e) => {
                        let echo = e.to_json();
                        (e, false, echo)
                    }
                }
            }
            _ => return Err(CliError::Usage("give exactly one of --element or --input-json".into())),
        };

    enum Target {
        Perm(PermBasis),
        Pair(PairBasis),
    }
    let target_parsed = match target.to_ascii_lowercase().as_str() {
        "t" => Target::Perm(PermBasis::T),
        "cprime" | "cp" => Target::Perm(PermBasis::Cprime),
        "c" | "ctwisted" => Target::Perm(PermBasis::CTwisted),
        "murphy" | "m" => Target::Pair(PairBasis::Murphy),
        "dual-murphy" | "n" => Target::Pair(PairBasis::DualMurphy),
        "seminormal" | "f" => Target::Pair(PairBasis::Seminormal),
        "dual-seminormal" | "g" => Target::Pair(PairBasis::DualSeminormal),
        other => return Err(CliError::Usage(format!("unknown target basis {other:?}"))),
    };

    // integral claims hold for the T/Cp/C/M/N targets of integral elements
    let integral_target = matches!(
        target_parsed,
        Target::Perm(_) | Target::Pair(PairBasis::Murphy) | Target::Pair(PairBasis::DualMurphy)
    );
    let emit_integral = integral_input && integral_target;

    let coeff_json = |c: &RationalFn| -> Result<serde_json::Value, CliError> {
        if emit_integral {
            let l = c
                .to_laurent()
                .map_err(|e| CliError::Internal(format!("expected integral coefficient: {e}")))?;
            Ok(serde_json::to_value(&l).expect("serializable"))
        } else {
            Ok(serde_json::to_value(c).expect("serializable"))
        }
    };

    let (terms, text): (Vec<serde_json::Value>, Vec<String>) = match target_parsed {
        Target::Perm(basis) => {
            let coords = expand_perm_basis(&ctx, &rational, basis)?;
            let mut terms = Vec::new();
            let mut text = Vec::new();
            for (w, c) in &coords {
                terms.push(json!({"perm": w.one_line(), "coeff": coeff_json(c)?}));
                text.push(format!("{w}: {c}"));
            }
            (terms, text)
        }
        Target::Pair(basis) => {
            let coords = expand_pair_basis(&ctx, &rational, basis)?;
            let table = ctx.murphy_table();
            let mut terms = Vec::new();
            let mut text = Vec::new();
            for (&idx, c) in &coords {
                let (s, t) = table.tableau_pair(idx);
                terms.push(json!({"s": s, "t": t, "coeff": coeff_json(c)?}));
                text.push(format!("([{s}]; [{t}]): {c}"));
            }
            (terms, text)
        }
    };

    let value = json!({
        "n": n,
        "target": target,
        "element": echo,
        "terms": terms,
    });
    print_value(format, &value, || text.join("\n"));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_dominance(
    a: Option<String>,
    b: Option<String>,
    ta: Option<String>,
    tb: Option<String>,
    pair_a: Option<String>,
    pair_b: Option<String>,
    format: Format,
) -> Result<(), CliError> {
    match (a, b, ta, tb, pair_a, pair_b) {
        (Some(a), Some(b), None, None, None, None) => {
            let pa = Partition::new(parse_numbers(&a)?).map_err(|e| CliError::Usage(e.to_string()))?;
            let pb = Partition::new(parse_numbers(&b)?).map_err(|e| CliError::Usage(e.to_string()))?;
            if pa.size() != pb.size() {
                return Err(CliError::Usage(format!(
                    "partitions of different integers: {} vs {}",
                    pa.size(),
                    pb.size()
                )));
            }
            let ab = pa.dominates(&pb);
            let ba = pb.dominates(&pa);
            let value = json!({"a": pa.parts(), "b": pb.parts(), "a_dominates_b": ab, "b_dominates_a": ba});
            print_value(format, &value, || {
                format!("a dominates b: {ab}\nb dominates a: {ba}")
            });
        }
        (None, None, Some(ta), Some(tb), None, None) => {
            let x = tableau_json(&ta)?;
            let y = tableau_json(&tb)?;
            if x.size() != y.size() {
                return Err(CliError::Usage(format!(
                    "tableaux of different sizes: {} vs {}",
                    x.size(),
                    y.size()
                )));
            }
            let ab = x.dominates(&y);
            let ba = y.dominates(&x);
            let value = json!({"ta": x, "tb": y, "a_dominates_b": ab, "b_dominates_a": ba});
            print_value(format, &value, || {
                format!("ta dominates tb: {ab}\ntb dominates ta: {ba}")
            });
        }
        (None, None, None, None, Some(pa), Some(pb)) => {
            let parse_pair = |s: &str| -> Result<TableauPair, CliError> {
                let v: serde_json::Value =
                    serde_json::from_str(s).map_err(|e| CliError::Usage(format!("bad pair JSON: {e}")))?;
                let s_tab = tableau_json(&v["s"].to_string())?;
                let t_tab = tableau_json(&v["t"].to_string())?;
                TableauPair::new(s_tab, t_tab).map_err(|e| CliError::Usage(e.to_string()))
            };
            let x = parse_pair(&pa)?;
            let y = parse_pair(&pb)?;
            if x.first().size() != y.first().size() {
                return Err(CliError::Usage("pairs of different sizes".into()));
            }
            let fwd = pair_order(&x, &y);
            let bwd = pair_order(&y, &x);
            let value = json!({
                "equal": fwd.equal,
                "a_weak_geq_b": fwd.weak_geq,
                "a_strong_geq_b": fwd.strong_geq,
                "b_weak_geq_a": bwd.weak_geq,
                "b_strong_geq_a": bwd.strong_geq,
            });
            print_value(format, &value, || {
                format!(
                    "equal: {}\na >= b weak: {}, strong: {}\nb >= a weak: {}, strong: {}",
                    fwd.equal, fwd.weak_geq, fwd.strong_geq, bwd.weak_geq, bwd.strong_geq
                )
            });
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of (--a, --b), (--ta, --tb) or (--pair-a, --pair-b)".into(),
            ))
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::RankCap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal consistency failure: {msg}");
            ExitCode::from(4)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
