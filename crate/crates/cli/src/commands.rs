use hofflat::assoc::{associated_hoffman, AssocError, AssocParams};
use hofflat::exactmat::{lambda_min_bracket, psd_check, psd_check_int, IntSymMatrix};
use hofflat::families::{self, check_srg};
use hofflat::forbidden::{enumerate_mhat_with, mhat_check, minimal_forbidden_check, realize_special, EnumParams};
use hofflat::formats::{gram_digest, write_graph, write_hoffman, CertificateFile};
use hofflat::hoffman::{canonical_fat, FatMode, Graph};
use hofflat::lattice::{certify_gram, certify_graph, Certification, CertifyOptions, GramLattice, Verdict};
use hofflat::spectra::{float_spectrum, limit_report, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::input::{load, load_graph, load_hoffman, load_matrix, read, Input};
use crate::report::{Outcome, RunReport, INCONCLUSIVE, SUCCESS, VIOLATION};
use crate::Command;

type CmdResult = Result<Outcome, String>;

pub fn run(cmd: &Command, seed: u64) -> CmdResult {
    match cmd {
        Command::Eigen { input } => eigen(input),
        Command::Psd { input, shift } => psd(input, shift),
        Command::Sp { input } => sp(input),
        Command::Assoc { input, m, n, relaxed } => assoc(input, *m, *n, *relaxed),
        Command::Certify { input, s, m } => certify(input, *s, *m),
        Command::Decompose { input, s } => decompose(input, *s),
        Command::EnumForbidden { max_order, max_classes } => enum_forbidden(*max_order, *max_classes),
        Command::Realize { input } => realize(input),
        Command::Limit { input, i2, nmax } => limit(input, i2, *nmax),
        Command::Gen { family, params, base } => gen(family, params, base.as_deref(), seed),
        Command::Ingest { input, expect_srg } => ingest(input, expect_srg.as_deref()),
        Command::Verify { input, certificate } => verify(input, certificate),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// The matrix a command works on: `A` for graphs, `Sp` for Hoffman graphs.
fn base_matrix(input: &Input) -> Result<(IntSymMatrix, &'static str), String> {
    Ok(match input {
        Input::Graph(g) => (g.adjacency_matrix().map_err(err)?, "adjacency"),
        Input::Hoffman(h) => (h.special_matrix().map_err(err)?, "special"),
        Input::Matrix(m) => (m.clone(), "matrix"),
    })
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("invalid shift `{s}`, expected an integer or p/q");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn matrix_json(m: &IntSymMatrix) -> Value {
    json!(m.rows())
}

fn eigen(path: &str) -> CmdResult {
    let loaded = load(path)?;
    let (m, kind) = base_matrix(&loaded.input)?;
    let width = BigRational::new(BigInt::from(1), BigInt::from(1u64 << 20));
    let (lo, hi) = lambda_min_bracket(&m, &width);
    let spectrum: Vec<f64> = float_spectrum(&m);
    let result = json!({
        "matrix": kind,
        "order": m.order(),
        "spectrum": spectrum,
        "lambda_min_bracket": [lo.to_string(), hi.to_string()],
    });
    Ok(Outcome::Report(RunReport::new("computed", SUCCESS, result).with_input(path, loaded.digest)))
}

fn psd(path: &str, shift: &str) -> CmdResult {
    let loaded = load(path)?;
    let (m, kind) = base_matrix(&loaded.input)?;
    let t = parse_rational(shift)?;
    let v = psd_check(&m, &t);
    let pivots: Vec<String> = v.pivot_trace.iter().map(|p| p.to_string()).collect();
    let result = json!({
        "matrix": kind,
        "shift": t.to_string(),
        "is_psd": v.is_psd,
        "is_singular": v.is_singular,
        "failure_index": v.failure_index,
        "pivots": pivots,
    });
    let (verdict, code) = if v.is_psd { ("psd", SUCCESS) } else { ("not-psd", VIOLATION) };
    Ok(Outcome::Report(RunReport::new(verdict, code, result).with_input(path, loaded.digest)))
}

fn sp(path: &str) -> CmdResult {
    let (h, digest) = load_hoffman(path)?;
    let m = h.special_matrix().map_err(err)?;
    let v = h.validate();
    let result = json!({
        "slim": h.slim_vertices().len(),
        "fat": h.fat_vertices().len(),
        "is_fat": v.is_fat,
        "special_matrix": matrix_json(&m),
        "psd_shift_3": psd_check_int(&m, 3).is_psd,
    });
    Ok(Outcome::Report(RunReport::new("computed", SUCCESS, result).with_input(path, digest)))
}

fn assoc(path: &str, m: usize, n: usize, relaxed: bool) -> CmdResult {
    let (g, digest) = load_graph(path)?;
    let params = if relaxed { AssocParams::relaxed(m, n) } else { AssocParams::new(m, n) }.map_err(err)?;
    let report = match associated_hoffman(&g, params) {
        Ok(a) => {
            let sp = a.hoffman.special_matrix().map_err(err)?;
            let psd3 = psd_check_int(&sp, 3).is_psd;
            let result = json!({
                "params": {"m": m, "n": n},
                "classes": a.classes,
                "is_fat": a.is_fat,
                "psd_shift_3": psd3,
                "hoffman": write_hoffman(&a.hoffman),
            });
            let ok = a.is_fat && psd3;
            RunReport::new(if ok { "fat" } else { "not-fat-or-below-minus-3" }, if ok { SUCCESS } else { VIOLATION }, result)
        }
        Err(e @ (AssocError::K2mPresent(_) | AssocError::PreconditionViolated { .. } | AssocError::QuasiCliqueMismatch { .. })) => {
            RunReport::new("violation", VIOLATION, json!({"params": {"m": m, "n": n}, "reason": e.to_string()}))
        }
        Err(e) => return Err(err(e)),
    };
    Ok(Outcome::Report(report.with_input(path, digest)))
}

fn certification_report(c: &Certification, gram: &IntSymMatrix) -> RunReport {
    let (verdict, code, certificate, reason) = match &c.verdict {
        Verdict::Feasible(d) => ("feasible", SUCCESS, Some(CertificateFile::new(d, gram)), None),
        Verdict::Infeasible { reason } => ("infeasible", VIOLATION, None, Some(reason.clone())),
        Verdict::Inconclusive { reason } => ("inconclusive", INCONCLUSIVE, None, Some(reason.clone())),
    };
    let result = json!({
        "t": c.t,
        "route": c.route,
        "components": c.components,
        "gram_digest": gram_digest(gram),
        "certificate": certificate,
        "reason": reason,
    });
    RunReport::new(verdict, code, result)
}

fn certify(path: &str, s: u64, m: usize) -> CmdResult {
    let (g, digest) = load_graph(path)?;
    let opts = CertifyOptions { m, ..CertifyOptions::default() };
    let c = certify_graph(&g, s, opts).map_err(err)?;
    let gram = g.adjacency_matrix().map_err(err)?.shifted(c.t);
    Ok(Outcome::Report(certification_report(&c, &gram).with_input(path, digest)))
}

fn decompose(path: &str, s: u64) -> CmdResult {
    let (m, digest) = load_matrix(path)?;
    let b = GramLattice::new(m.clone(), path).map_err(err)?;
    let c = certify_gram(&b, s, CertifyOptions::default()).map_err(err)?;
    Ok(Outcome::Report(certification_report(&c, &m).with_input(path, digest)))
}

fn enum_forbidden(max_order: usize, max_classes: usize) -> CmdResult {
    if max_order > 5 {
        eprintln!("note: orders above 5 take minutes to hours; order 7 alone keeps about 10^5 intermediate classes");
    }
    let e = enumerate_mhat_with(EnumParams { max_order, max_classes }).map_err(err)?;
    let mut lines = Vec::new();
    let mut minimal_per_order = vec![0usize; max_order + 1];
    let mut per_order = vec![0usize; max_order + 1];
    for c in &e.candidates {
        per_order[c.order] += 1;
        let realized = realize_special(&c.m);
        let (hoffman, minimal, witness) = match &realized {
            Some(h) => {
                let v = minimal_forbidden_check(h).map_err(err)?;
                if v.is_minimal_forbidden {
                    minimal_per_order[c.order] += 1;
                }
                (Some(write_hoffman(h)), Some(v.is_minimal_forbidden), v.witness.map(|w| w.vertices))
            }
            None => (None, None, None),
        };
        let line = json!({
            "order": c.order,
            "matrix": matrix_json(&c.m),
            "realized": realized.is_some(),
            "hoffman": hoffman,
            "minimal_forbidden": minimal,
            "witness": witness,
        });
        lines.push(serde_json::to_string(&line).map_err(err)?);
    }
    let result = json!({
        "max_order": max_order,
        "complete": e.complete,
        "complete_through": e.complete_through,
        "level_sizes": e.level_sizes,
        "candidates_per_order": per_order,
        "minimal_forbidden_per_order": minimal_per_order,
    });
    let (verdict, code) = if e.complete {
        ("complete", SUCCESS)
    } else {
        eprintln!(
            "INCONCLUSIVE: enumeration stopped after order {} (class limit {max_classes}); orders above it are not covered",
            e.complete_through
        );
        ("inconclusive", INCONCLUSIVE)
    };
    Ok(Outcome::Lines(lines, RunReport::new(verdict, code, result)))
}

fn realize(path: &str) -> CmdResult {
    let (m, digest) = load_matrix(path)?;
    let report = match mhat_check(&m) {
        Err(v) => RunReport::new("violation", VIOLATION, json!({"violation": v})),
        Ok(()) => match realize_special(&m) {
            None => RunReport::new("not-realizable", VIOLATION, json!({"violation": null})),
            Some(h) => {
                let v = minimal_forbidden_check(&h).map_err(err)?;
                let result = json!({
                    "hoffman": write_hoffman(&h),
                    "minimal_forbidden": v.is_minimal_forbidden,
                    "witness": v.witness.map(|w| w.vertices),
                });
                RunReport::new("realized", SUCCESS, result)
            }
        },
    };
    Ok(Outcome::Report(report.with_input(path, digest)))
}

fn limit(path: &str, i2: &[usize], nmax: usize) -> CmdResult {
    let (m, digest) = load_matrix(path)?;
    let p = Partition::from_i2(m.order(), i2.to_vec()).map_err(err)?;
    let r = limit_report(&m, &p, nmax).map_err(err)?;
    let ok = r.monotone && r.lower_bound && r.convergence_bound;
    let result = json!({"partition": p, "report": r});
    let (verdict, code) = if ok { ("holds", SUCCESS) } else { ("violation", VIOLATION) };
    Ok(Outcome::Report(RunReport::new(verdict, code, result).with_input(path, digest)))
}

fn param(params: &[String], i: usize, name: &str) -> Result<usize, String> {
    let s = params.get(i).ok_or_else(|| format!("missing parameter <{name}>"))?;
    s.parse().map_err(|_| format!("invalid <{name}> `{s}`"))
}

fn base_graph(base: Option<&str>) -> Result<Graph, String> {
    let path = base.ok_or("this family needs --base <graph file>")?;
    Ok(load_graph(path)?.0)
}

fn gen(family: &str, params: &[String], base: Option<&str>, seed: u64) -> CmdResult {
    let g = match family {
        "path" => families::path(param(params, 0, "n")?),
        "cycle" => families::cycle(param(params, 0, "n")?),
        "complete" => families::complete(param(params, 0, "n")?),
        "claw" => families::claw(param(params, 0, "t")?),
        "k-tilde" => families::k_tilde(param(params, 0, "m")?),
        "e6-tilde" => Ok(families::e6_tilde()),
        "glg" => families::random_glg(param(params, 0, "n")?, param(params, 1, "dim")?, seed).map(|(g, _)| g),
        "line" => Ok(base_graph(base)?.line_graph()),
        "cone" => Ok(families::k_point_cone(&base_graph(base)?, param(params, 0, "k")?)),
        "k-of-m" => families::k_of_m(&base_graph(base)?, param(params, 0, "m")?),
        "p-blow-up" => families::p_blow_up(&base_graph(base)?, param(params, 0, "n")?),
        "q-blow-up" => families::clique_blow_up(&canonical_fat(&base_graph(base)?, FatMode::Q), param(params, 0, "n")?),
        "e6-blow-up" => families::p_blow_up(&families::e6_tilde(), param(params, 0, "n")?),
        other => return Err(format!("unknown family `{other}`")),
    }
    .map_err(err)?;
    Ok(Outcome::Text(write_graph(&g), SUCCESS))
}

fn ingest(path: &str, expect: Option<&[usize]>) -> CmdResult {
    let (g, digest) = load_graph(path)?;
    let mut result = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "min_degree": g.min_degree(),
        "max_degree": g.max_degree(),
        "connected": g.is_connected(),
    });
    let (verdict, code) = match expect {
        None => ("parsed", SUCCESS),
        Some(p) => {
            let [n, k, l, mu] = p else {
                return Err("--expect-srg takes four values n,k,lambda,mu".into());
            };
            match check_srg(&g, (*n, *k, *l, *mu)) {
                Ok(r) => {
                    result["srg"] = json!(r);
                    ("strongly-regular", SUCCESS)
                }
                Err(e) => {
                    result["srg_failure"] = json!(e.to_string());
                    ("not-strongly-regular", VIOLATION)
                }
            }
        }
    };
    Ok(Outcome::Report(RunReport::new(verdict, code, result).with_input(path, digest)))
}

fn verify(path: &str, cert_path: &str) -> CmdResult {
    let loaded = load(path)?;
    let (text, cert_digest) = read(cert_path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("{cert_path}: {e}"))?;
    let cert_value = match value.pointer("/result/certificate") {
        Some(Value::Null) => return Err(format!("{cert_path}: report carries no certificate")),
        Some(c) => c.clone(),
        None => value,
    };
    let cert: CertificateFile = serde_json::from_value(cert_value).map_err(|e| format!("{cert_path}: {e}"))?;
    let (base, _) = base_matrix(&loaded.input)?;
    // graphs and Hoffman graphs are certified at a shift; match it by digest
    let shifts: Vec<i64> = match loaded.input {
        Input::Matrix(_) => vec![0],
        _ => (0..=3).collect(),
    };
    let gram = shifts.iter().map(|&t| base.shifted(t)).find(|g| gram_digest(g) == cert.gram_digest);
    let report = match gram {
        None => RunReport::new("mismatch", VIOLATION, json!({"reason": "gram digest matches no admissible shift of the input"})),
        Some(gram) => match cert.verify(&gram) {
            Ok(d) => RunReport::new("verified", SUCCESS, json!({"scale": d.scale, "ambient_dim": d.ambient_dim, "order": gram.order()})),
            Err(e) => RunReport::new("mismatch", VIOLATION, json!({"reason": e.to_string()})),
        },
    };
    Ok(Outcome::Report(report.with_input(path, loaded.digest).with_input(cert_path, cert_digest)))
}
