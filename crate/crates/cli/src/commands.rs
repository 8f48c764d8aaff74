//! Subcommand dispatch: load documents, call into the library, emit a
//! report on stdout. Exit code 0 = ok, 1 = violation or computational
//! failure, 2 = usage or parse error.

use clap::{Parser, Subcommand};
use serde_json::json;

use novflow::flowcat::{
    arnold_check, assemble_complex, bifurcation_move_c, bifurcation_move_d, check_d_squared,
    cone_decompose, descend_to_lambda0, square_decompose, validate_category,
};
use novflow::morse::{
    arnold_demo, build_simplicial, discrete_gradient, morse_complex, simplicial_homology,
    to_flow_category, Space, Strategy,
};
use novflow::novikov::{diagonalize, min_rank, nov_homology, NovikovGroupDesc, Truncation};
use novflow::perturb::{boundary_consistency, check_strong_transversality, count_signed_zeros, extend_from_boundary};
use novflow::strata::{collar, double, product};
use novflow::{Int, Rat};

use crate::document::{
    parse_document, serialize_document, ComplexDto, Document, MatrixDto, SectionDto, StratSpaceDto,
};
use crate::report::{OutputFormat, Report};
use crate::text;

#[derive(Parser)]
#[command(name = "novflow", version, about = "Exact Novikov / flow-category toolkit")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Seed recorded in reports and used by randomized helpers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the Novikov cochain complex of a flow category.
    Assemble { file: String, #[arg(long, default_value = "exact")] truncation: String },
    /// Check d² = 0 of a flow category's rigid counts.
    D2 { file: String },
    /// Cone decomposition along an object split.
    Cone {
        file: String,
        /// Comma-separated C1 object ids.
        #[arg(long)]
        c1: String,
        #[arg(long, default_value = "exact")]
        truncation: String,
    },
    /// Square decomposition along four parts with a homotopy extraction.
    Square {
        file: String,
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        c3: String,
        #[arg(long)]
        c4: String,
        #[arg(long, default_value = "exact")]
        truncation: String,
    },
    /// Rebase a complex to Λ₀ by generator energies.
    Descend {
        file: String,
        /// Repeated id=p/q assignments.
        #[arg(long = "energy")]
        energy: Vec<String>,
    },
    /// Apply a bifurcation basis-change move to a complex.
    Bifurcate {
        file: String,
        /// Move kind: c or d.
        #[arg(long = "move")]
        kind: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 1)]
        sign: i8,
        /// Novikov element in the textual form, e.g. "1 + 2*T^(1/2)".
        #[arg(long)]
        weight: Option<String>,
        /// Positive-valuation element for move (d).
        #[arg(long)]
        u: Option<String>,
    },
    /// Arnold bound check for a flow category.
    Arnold { file: String, #[arg(long, default_value = "exact")] truncation: String },
    /// Diagonalize a Novikov matrix (U·M·V = D).
    Snf { file: String },
    /// Minimal rank of the cohomology of a complex.
    Minrank { file: String },
    /// Double of a combinatorial stratified space.
    Double { file: String },
    /// Collar of a combinatorial stratified space.
    Collar { file: String },
    /// Product of two stratified spaces.
    Product { file: String, file2: String },
    /// Euler characteristic of a stratified space.
    Euler { file: String },
    /// Canonical extension of boundary data over a corner domain.
    Extend { file: String },
    /// Strong transversality report for a polynomial section.
    Transversal { file: String, #[arg(long, default_value_t = 1e-8)] tol: f64 },
    /// Signed zero count on one stratum.
    Count {
        file: String,
        /// Comma-separated 1-based corner indices of the stratum.
        #[arg(long, default_value = "")]
        stratum: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Boundary consistency of a vdim-1 section.
    Boundary { file: String, #[arg(long, default_value_t = 1e-8)] tol: f64 },
    /// Build a bundled triangulation.
    Triangulate { name: String },
    /// Integer simplicial homology of a bundled space.
    Homology { name: String },
    /// Greedy discrete gradient and Morse complex of a bundled space.
    Morse { name: String },
    /// Full pipeline: triangulate, match, assemble, bound check.
    #[command(name = "arnold-demo")]
    ArnoldDemo { name: String },
}

pub fn run<It, S>(argv: It) -> i32
where
    It: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap's help/version go to stdout with code 0.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let format = match cli.format.as_str() {
        "json" => OutputFormat::Json,
        "text" => OutputFormat::Text,
        other => {
            eprintln!("unknown format '{}'", other);
            return 2;
        }
    };
    let started = std::time::Instant::now();
    let mut report = match dispatch(&cli.command, cli.seed) {
        Ok(r) => r,
        Err(UsageError(msg)) => {
            eprintln!("{}", msg);
            return 2;
        }
    };
    report.timing_ms = started.elapsed().as_secs_f64() * 1e3;
    println!("{}", report.render(format));
    report.exit_code()
}

/// Errors that are the caller's fault: bad files, bad flags, parse errors.
struct UsageError(String);

fn load(path: &str) -> Result<Document, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {}", path, e)))?;
    parse_document(&text).map_err(|e| UsageError(format!("{}: {}", path, e)))
}

fn want_matrix(doc: Document, path: &str) -> Result<MatrixDto, UsageError> {
    match doc {
        Document::NovikovMatrix(d) => Ok(d),
        other => Err(UsageError(format!("{}: expected novikov_matrix, got {}", path, other.kind()))),
    }
}

fn want_complex(doc: Document, path: &str) -> Result<ComplexDto, UsageError> {
    match doc {
        Document::Complex(d) => Ok(d),
        other => Err(UsageError(format!("{}: expected complex, got {}", path, other.kind()))),
    }
}

fn want_category(doc: Document, path: &str) -> Result<crate::document::FlowCategoryDto, UsageError> {
    match doc {
        Document::FlowCategory(d) => Ok(d),
        other => Err(UsageError(format!("{}: expected flow_category, got {}", path, other.kind()))),
    }
}

fn want_space(doc: Document, path: &str) -> Result<StratSpaceDto, UsageError> {
    match doc {
        Document::StratSpace(d) => Ok(d),
        other => Err(UsageError(format!("{}: expected strat_space, got {}", path, other.kind()))),
    }
}

fn want_section(doc: Document, path: &str) -> Result<SectionDto, UsageError> {
    match doc {
        Document::Section(d) => Ok(d),
        other => Err(UsageError(format!("{}: expected section, got {}", path, other.kind()))),
    }
}

fn parse_trunc(spec: &str) -> Result<Truncation<Int>, UsageError> {
    if spec == "exact" {
        return Ok(Truncation::Exact);
    }
    text::parse_rational(spec)
        .map(Truncation::Finite)
        .map_err(|e| UsageError(format!("bad --truncation '{}': {}", spec, e)))
}

fn parse_space(name: &str) -> Result<Space, UsageError> {
    Space::parse(name).ok_or_else(|| {
        UsageError(format!(
            "unknown space '{}'; expected one of {}",
            name,
            Space::ALL.map(|s| s.name()).join(", ")
        ))
    })
}

fn ids_of(spec: &str) -> Vec<String> {
    spec.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn homology_json(h: &novflow::Cohomology) -> serde_json::Value {
    let groups: Vec<_> = h
        .groups
        .iter()
        .filter(|(_, g)| !g.is_trivial())
        .map(|(k, g)| {
            json!({
                "degree": k,
                "free_rank": g.free_rank,
                "torsion": g.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "n": h.n, "groups": groups })
}

fn dispatch(cmd: &Command, seed: u64) -> Result<Report, UsageError> {
    match cmd {
        Command::Assemble { file, truncation } => {
            let mut report = Report::new("assemble", seed);
            let cat = want_category(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            let tau = parse_trunc(truncation)?;
            match assemble_complex(&cat, tau) {
                Ok(c) => {
                    let dto = ComplexDto::from_core(&c, "payload").map_err(|e| UsageError(e.to_string()))?;
                    report.push(json!({
                        "kind": "complex",
                        "generators": c.total_rank(),
                        "lambda0": c.is_lambda0(),
                        "document": serde_json::from_str::<serde_json::Value>(&serialize_document(&Document::Complex(dto))).unwrap(),
                    }));
                }
                Err(e) => report.violation(json!({ "kind": "assembly_failure", "message": e.to_string() })),
            }
            Ok(report)
        }
        Command::D2 { file } => {
            let mut report = Report::new("d2", seed);
            let cat = want_category(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            match check_d_squared(&cat) {
                Ok(r) if r.ok => report.push(json!({ "kind": "d_squared", "ok": true })),
                Ok(r) => {
                    for (x, y) in &r.witnesses {
                        report.violation(json!({ "kind": "d_squared_witness", "from": x, "to": y }));
                    }
                }
                Err(e) => report.error(e.to_string()),
            }
            Ok(report)
        }
        Command::Cone { file, c1, truncation } => {
            let mut report = Report::new("cone", seed);
            let cat = want_category(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            let tau = parse_trunc(truncation)?;
            match cone_decompose(&cat, &ids_of(c1), tau) {
                Ok(cone) => {
                    let ok = cone.chain_map_ok && cone.cone_matches;
                    let finding = json!({
                        "kind": "cone",
                        "chain_map_ok": cone.chain_map_ok,
                        "cone_matches": cone.cone_matches,
                        "f_blocks": cone.f.len(),
                    });
                    if ok {
                        report.push(finding);
                    } else {
                        report.violation(finding);
                    }
                }
                Err(e) => report.error(e.to_string()),
            }
            Ok(report)
        }
        Command::Square { file, c1, c2, c3, c4, truncation } => {
            let mut report = Report::new("square", seed);
            let cat = want_category(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            let tau = parse_trunc(truncation)?;
            let (a, b, c, d) = (ids_of(c1), ids_of(c2), ids_of(c3), ids_of(c4));
            match square_decompose(&cat, [&a, &b, &c, &d], tau) {
                Ok(sq) => {
                    let finding = json!({
                        "kind": "square",
                        "identity_ok": sq.identity_ok,
                        "homotopy_blocks": sq.homotopy.len(),
                    });
                    if sq.identity_ok {
                        report.push(finding);
                    } else {
                        report.violation(finding);
                    }
                }
                Err(e) => report.error(e.to_string()),
            }
            Ok(report)
        }
        Command::Descend { file, energy } => {
            let mut report = Report::new("descend", seed);
            let complex = want_complex(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            let mut table = std::collections::HashMap::new();
            for spec in energy {
                let (id, value) = spec
                    .split_once('=')
                    .ok_or_else(|| UsageError(format!("bad --energy '{}'; expected id=p/q", spec)))?;
                let r: Rat = text::parse_rational(value).map_err(|e| UsageError(e.to_string()))?;
                table.insert(id.trim().to_string(), r);
            }
            match descend_to_lambda0(&complex, &table) {
                Ok(out) => {
                    let dto = ComplexDto::from_core(&out, "payload").map_err(|e| UsageError(e.to_string()))?;
                    report.push(json!({
                        "kind": "complex",
                        "lambda0": out.is_lambda0(),
                        "document": serde_json::from_str::<serde_json::Value>(&serialize_document(&Document::Complex(dto))).unwrap(),
                    }));
                }
                Err(e) => report.violation(json!({ "kind": "descent_failure", "message": e.to_string() })),
            }
            Ok(report)
        }
        Command::Bifurcate { file, kind, p, q, sign, weight, u } => {
            let mut report = Report::new("bifurcate", seed);
            let complex = want_complex(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            let result = match kind.as_str() {
                "c" => {
                    let q = q.as_ref().ok_or_else(|| UsageError("--q is required for move c".into()))?;
                    let w = weight.as_deref().unwrap_or("1");
                    let w = text::parse_element(w).map_err(|e| UsageError(e.to_string()))?;
                    let w = w.truncated(complex.truncation.clone());
                    bifurcation_move_c(&complex, p, q, *sign, &w)
                }
                "d" => {
                    let u = u.as_ref().ok_or_else(|| UsageError("--u is required for move d".into()))?;
                    let u = text::parse_element(u).map_err(|e| UsageError(e.to_string()))?;
                    let u = u.truncated(complex.truncation.clone());
                    bifurcation_move_d(&complex, p, &u)
                }
                other => return Err(UsageError(format!("unknown move '{}'; expected c or d", other))),
            };
            match result {
                Ok(out) => {
                    let dto = ComplexDto::from_core(&out, "payload").map_err(|e| UsageError(e.to_string()))?;
                    report.push(json!({
                        "kind": "complex",
                        "document": serde_json::from_str::<serde_json::Value>(&serialize_document(&Document::Complex(dto))).unwrap(),
                    }));
                }
                Err(e) => report.violation(json!({ "kind": "move_failure", "message": e.to_string() })),
            }
            Ok(report)
        }
        Command::Arnold { file, truncation } => {
            let mut report = Report::new("arnold", seed);
            let cat = want_category(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            let validation = validate_category(&cat);
            if !validation.is_valid() {
                for v in &validation.violations {
                    report.violation(json!({ "kind": "category_violation", "detail": format!("{:?}", v) }));
                }
                return Ok(report);
            }
            let tau = parse_trunc(truncation)?;
            match arnold_check(&cat, tau) {
                Ok(r) => {
                    let finding = json!({
                        "kind": "arnold",
                        "generators": r.generator_count,
                        "min_rank": r.min_rank,
                        "weak_min_rank": r.weak_min_rank,
                        "satisfied": r.satisfied,
                        "homology": homology_json(&r.homology),
                    });
                    if r.satisfied {
                        report.push(finding);
                    } else {
                        report.violation(finding);
                    }
                }
                Err(e) => report.error(e.to_string()),
            }
            Ok(report)
        }
        Command::Snf { file } => {
            let mut report = Report::new("snf", seed);
            let m = want_matrix(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            match diagonalize(&m) {
                Ok(dg) => {
                    let verified = dg.verify(&m);
                    let finding = json!({
                        "kind": "diagonalization",
                        "factors": dg.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        "rank": dg.rank(),
                        "verified": verified,
                        "u_det": dg.u_det.to_text(),
                        "v_det": dg.v_det.to_text(),
                        "d": serde_json::to_value(MatrixDto::from_core(&dg.d, "d").map_err(|e| UsageError(e.to_string()))?).unwrap(),
                        "u": serde_json::to_value(MatrixDto::from_core(&dg.u, "u").map_err(|e| UsageError(e.to_string()))?).unwrap(),
                        "v": serde_json::to_value(MatrixDto::from_core(&dg.v, "v").map_err(|e| UsageError(e.to_string()))?).unwrap(),
                    });
                    if verified {
                        report.push(finding);
                    } else {
                        report.violation(finding);
                    }
                }
                Err(e) => report.error(e.to_string()),
            }
            Ok(report)
        }
        Command::Minrank { file } => {
            let mut report = Report::new("minrank", seed);
            let complex = want_complex(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            match nov_homology(&complex).and_then(|h| min_rank(&h).map(|r| (h, r))) {
                Ok((h, r)) => {
                    report.push(json!({
                        "kind": "min_rank",
                        "bound": r.bound,
                        "weak_bound": r.weak_bound,
                        "realizing_generators": r.realizing.total_rank(),
                        "realizing_verified": r.verified,
                        "homology": homology_json(&h),
                    }));
                }
                Err(e) => report.error(e.to_string()),
            }
            Ok(report)
        }
        Command::Double { file } => {
            let mut report = Report::new("double", seed);
            let x = want_space(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            match double(&x) {
                Ok(d) => {
                    report.push(json!({
                        "kind": "double",
                        "group_rank": d.group_rank,
                        "cells": d.space.cells.len(),
                        "euler": d.space.euler_char(),
                        "document": serde_json::from_str::<serde_json::Value>(&serialize_document(&Document::StratSpace(StratSpaceDto::from_core(&d.space)))).unwrap(),
                    }));
                }
                Err(e) => report.violation(json!({ "kind": "invariant_violation", "message": e.to_string() })),
            }
            Ok(report)
        }
        Command::Collar { file } => {
            let mut report = Report::new("collar", seed);
            let x = want_space(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            match collar(&x) {
                Ok(c) => {
                    report.push(json!({
                        "kind": "collar",
                        "cells": c.space.cells.len(),
                        "euler": c.space.euler_char(),
                        "document": serde_json::from_str::<serde_json::Value>(&serialize_document(&Document::StratSpace(StratSpaceDto::from_core(&c.space)))).unwrap(),
                    }));
                }
                Err(e) => report.violation(json!({ "kind": "invariant_violation", "message": e.to_string() })),
            }
            Ok(report)
        }
        Command::Product { file, file2 } => {
            let mut report = Report::new("product", seed);
            let x = want_space(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            let y = want_space(load(file2)?, file2)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            let p = product(&x, &y);
            report.push(json!({
                "kind": "product",
                "k": p.k,
                "cells": p.cells.len(),
                "euler": p.euler_char(),
                "document": serde_json::from_str::<serde_json::Value>(&serialize_document(&Document::StratSpace(StratSpaceDto::from_core(&p)))).unwrap(),
            }));
            Ok(report)
        }
        Command::Euler { file } => {
            let mut report = Report::new("euler", seed);
            let x = want_space(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            report.push(json!({ "kind": "euler", "chi": x.euler_char() }));
            Ok(report)
        }
        Command::Extend { file } => {
            let mut report = Report::new("extend", seed);
            let doc = load(file)?;
            let bd = match doc {
                Document::BoundaryData(d) => d.to_core("payload").map_err(|e| UsageError(e.to_string()))?,
                other => return Err(UsageError(format!("{}: expected boundary_data, got {}", file, other.kind()))),
            };
            match extend_from_boundary(&bd) {
                Ok(s) => {
                    let dto = SectionDto::from_core(&s, "payload").map_err(|e| UsageError(e.to_string()))?;
                    report.push(json!({
                        "kind": "section",
                        "document": serde_json::from_str::<serde_json::Value>(&serialize_document(&Document::Section(dto))).unwrap(),
                    }));
                }
                Err(e) => report.violation(json!({ "kind": "extension_failure", "message": e.to_string() })),
            }
            Ok(report)
        }
        Command::Transversal { file, tol } => {
            let mut report = Report::new("transversal", seed);
            let s = want_section(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            match check_strong_transversality(&s, *tol) {
                Ok(r) => {
                    for sr in &r.strata {
                        let finding = json!({
                            "kind": "stratum",
                            "stratum": sr.stratum,
                            "dim": sr.dim,
                            "zeros": sr.zeros,
                            "transverse": sr.transverse,
                        });
                        if sr.transverse {
                            report.push(finding);
                        } else {
                            report.violation(finding);
                        }
                    }
                    if r.all_transverse {
                        report.push(json!({ "kind": "verdict", "transverse": true }));
                    }
                }
                Err(e) => report.error(e.to_string()),
            }
            Ok(report)
        }
        Command::Count { file, stratum, tol } => {
            let mut report = Report::new("count", seed);
            let s = want_section(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            let mut mask = 0u32;
            for part in stratum.split(',').filter(|p| !p.trim().is_empty()) {
                let e: usize = part.trim().parse().map_err(|_| UsageError(format!("bad stratum '{}'", stratum)))?;
                if e == 0 || e > s.corner_dim {
                    return Err(UsageError(format!("stratum element {} outside 1..={}", e, s.corner_dim)));
                }
                mask |= 1 << (e - 1);
            }
            match count_signed_zeros(&s, mask, *tol) {
                Ok(n) => report.push(json!({ "kind": "signed_count", "stratum": mask, "count": n })),
                Err(e) => report.error(e.to_string()),
            }
            Ok(report)
        }
        Command::Boundary { file, tol } => {
            let mut report = Report::new("boundary", seed);
            let s = want_section(load(file)?, file)?.to_core("payload").map_err(|e| UsageError(e.to_string()))?;
            match boundary_consistency(&s, *tol) {
                Ok(r) => {
                    let finding = json!({
                        "kind": "boundary_consistency",
                        "consistent": r.consistent,
                        "wall_zeros": r.wall_zeros.len(),
                        "arcs": r.arcs.len(),
                        "detail": r.detail,
                    });
                    if r.consistent {
                        report.push(finding);
                    } else {
                        report.violation(finding);
                    }
                }
                Err(e) => report.error(e.to_string()),
            }
            Ok(report)
        }
        Command::Triangulate { name } => {
            let mut report = Report::new("triangulate", seed);
            let x = build_simplicial(parse_space(name)?);
            let counts: Vec<usize> = (0..=x.dim()).map(|d| x.count(d)).collect();
            report.push(json!({
                "kind": "triangulation",
                "space": name,
                "counts": counts,
                "euler": x.euler_char(),
                "maximal": x.simplices.last().cloned().unwrap_or_default(),
            }));
            Ok(report)
        }
        Command::Homology { name } => {
            let mut report = Report::new("homology", seed);
            let h = simplicial_homology::<Int>(&build_simplicial(parse_space(name)?));
            report.push(json!({ "kind": "homology", "space": name, "groups": homology_json(&h) }));
            Ok(report)
        }
        Command::Morse { name } => {
            let mut report = Report::new("morse", seed);
            let x = build_simplicial(parse_space(name)?);
            let v = discrete_gradient(&x, Strategy::GreedyLex);
            let m = morse_complex::<Int>(&x, &v);
            let f = to_flow_category(&m, NovikovGroupDesc::trivial());
            let complex = assemble_complex(&f, Truncation::Exact).map_err(|e| UsageError(e.to_string()))?;
            let dto = ComplexDto::from_core(&complex, "payload").map_err(|e| UsageError(e.to_string()))?;
            report.push(json!({
                "kind": "morse",
                "space": name,
                "critical": m.critical.iter().map(|v| v.len()).collect::<Vec<_>>(),
                "d_squared_zero": m.d_squared_is_zero(),
                "homology": homology_json(&m.homology()),
                "document": serde_json::from_str::<serde_json::Value>(&serialize_document(&Document::Complex(dto))).unwrap(),
            }));
            Ok(report)
        }
        Command::ArnoldDemo { name } => {
            let mut report = Report::new("arnold-demo", seed);
            let demo = arnold_demo::<Int>(parse_space(name)?);
            let finding = json!({
                "kind": "arnold_demo",
                "space": name,
                "critical": demo.critical_count,
                "min_rank": demo.min_rank,
                "weak_min_rank": demo.weak_min_rank,
                "bound_satisfied": demo.bound_satisfied,
                "oracle_match": demo.oracle_match,
                "homology": homology_json(&demo.homology),
            });
            if demo.bound_satisfied && demo.oracle_match {
                report.push(finding);
            } else {
                report.violation(finding);
            }
            Ok(report)
        }
    }
}

pub use crate::report::Status as ReportStatus;
