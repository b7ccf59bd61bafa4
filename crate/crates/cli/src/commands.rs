use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, Context as _, Result};
use gardner::board::{Frame, Placement, Slope, Square};
use gardner::certificate::{
    build_a_with, classify_report, extract_case2_vector, printed_null_vector, CaseTwoVector, CoefficientSystem,
};
use gardner::cnf::{encode, parse_model, Assignment, Dimacs};
use gardner::constructions::{enumerate_seeds, octagon_placement, validate_null_a, ConstructionError, SeedSet};
use gardner::fixtures;
use gardner::nullstellensatz::{
    balanced_lonely_slopes, find_nonvanishing, omega, Case1Data, Case2Data, Case2Poly, PolyError, ZeroSumGrid,
};
use gardner::solver::{find_min_good, known_m3, theorem_lower_bound, SearchConfig, SolverError, KNOWN_M3, MAX_N};
use serde_json::{json, Value};

use crate::output::{pass_fail, CommandResult, Status};

pub struct Context {
    pub budget: Option<Duration>,
    pub threads: Option<usize>,
}

/// A JSON file path, or a fixture name when no such file exists.
fn load_placement(arg: &str) -> Result<Placement> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(p) = fixtures::by_name(arg) {
            return Ok(p);
        }
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
    Placement::from_json(&text).with_context(|| format!("parsing {arg}"))
}

fn placement_value(p: &Placement) -> Value {
    serde_json::to_value(p.to_file(Frame::ZeroBased).expect("odd or even boards serialize zero-based")).unwrap()
}

fn squares_value<'a>(squares: impl IntoIterator<Item = &'a Square>, n: usize) -> Value {
    squares
        .into_iter()
        .map(|s| {
            let mut v = json!({ "col": s.col, "row": s.row, "algebraic": s.algebraic() });
            if let Ok((x, y)) = s.centered(n) {
                v["centered"] = json!([x, y]);
            }
            v
        })
        .collect()
}

fn per_slope_value(counts: [usize; 4]) -> Value {
    json!({ "v": counts[0], "h": counts[1], "d+": counts[2], "d-": counts[3] })
}

pub fn solve(
    ctx: &Context,
    n: usize,
    max_size: Option<usize>,
    use_symmetry: bool,
    hint: Option<usize>,
    theorem_bound: bool,
) -> Result<CommandResult> {
    if n == 0 || n > MAX_N {
        return Ok(CommandResult::error(Status::Unsupported, SolverError::UnsupportedSize(n).to_string()));
    }
    let mut cfg = SearchConfig::new(n);
    cfg.use_symmetry = use_symmetry;
    cfg.time_budget = ctx.budget;
    cfg.threads = ctx.threads;
    if let Some(m) = max_size {
        cfg.max_size = m;
    }
    if theorem_bound {
        cfg = cfg.with_theorem_bound();
    }
    if let Some(h) = hint {
        cfg.lower_bound_hint = h;
    }
    let r = match find_min_good(&cfg) {
        Ok(r) => r,
        Err(e) => return Ok(CommandResult::error(Status::Fail, e.to_string())),
    };
    if let Some(w) = &r.witness {
        if !w.is_good() || Some(w.len()) != r.m3 {
            bail!("solver returned an invalid witness");
        }
    }
    let payload = json!({
        "n": r.n,
        "m3": r.m3,
        "witness": r.witness.as_ref().map(placement_value),
        "nodes_expanded": r.nodes_expanded,
        "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
        "exhausted": r.exhausted,
        "lower_bound_hint": r.lower_bound_hint,
        "refuted": r.refuted,
        "known_reference": known_m3(n),
    });
    let mut text = String::new();
    let _ = writeln!(text, "n = {n}");
    match r.m3 {
        Some(m) => {
            let _ = writeln!(text, "m3 = {m}");
        }
        None if r.exhausted => {
            let _ = writeln!(text, "no good placement with at most {} queens", cfg.max_size.min(n * n));
        }
        None => {
            let _ = writeln!(text, "budget exceeded; sizes refuted so far: {:?}", r.refuted);
        }
    }
    if let Some(w) = &r.witness {
        text.push_str(&w.render_ascii());
    }
    let _ = writeln!(text, "nodes {}  elapsed {:.3}s", r.nodes_expanded, r.elapsed.as_secs_f64());
    let status = match (r.m3, r.exhausted) {
        (Some(_), true) => Status::Ok,
        (None, true) => Status::Fail,
        (_, false) => Status::BudgetExceeded,
    };
    let mut out = CommandResult::new(status, payload, text);
    if r.lower_bound_hint > 1 && r.m3.is_some() {
        let proven = theorem_lower_bound(n) >= r.lower_bound_hint;
        out = out.with_diagnostic(format!(
            "search started at q = {}; minimality below that rests on {}",
            r.lower_bound_hint,
            if proven { "the published lower bound" } else { "the caller's hint" }
        ));
    }
    Ok(out)
}

pub fn table(ctx: &Context, max_n: usize, large: bool, theorem_bound: bool) -> Result<CommandResult> {
    if max_n == 0 || max_n > KNOWN_M3.len() {
        return Ok(CommandResult::error(Status::Unsupported, format!("--max-n must be in 1..={}", KNOWN_M3.len())));
    }
    let start = Instant::now();
    let searchable = if large { MAX_N } else { 9 };
    let mut rows = Vec::new();
    let mut text = String::from("  n  m3  source\n");
    let mut status = Status::Ok;
    let mut diagnostics = Vec::new();
    for n in 1..=max_n {
        let known = known_m3(n);
        if n > searchable {
            rows.push(json!({ "n": n, "m3": known, "tag": "known-reference" }));
            let _ = writeln!(text, "{n:>3} {:>3}  known-reference", known.unwrap());
            continue;
        }
        let remaining = ctx.budget.map(|b| b.saturating_sub(start.elapsed()));
        let mut cfg = SearchConfig::new(n);
        cfg.threads = ctx.threads;
        cfg.time_budget = remaining;
        if theorem_bound {
            cfg = cfg.with_theorem_bound();
        }
        let r = if remaining == Some(Duration::ZERO) { None } else { Some(find_min_good(&cfg)?) };
        match r {
            Some(r) if r.exhausted && r.m3.is_some() => {
                let m = r.m3.unwrap();
                if Some(m) != known {
                    status = Status::Fail;
                    diagnostics.push(format!("n = {n}: computed {m}, reference {}", known.unwrap()));
                }
                rows.push(json!({
                    "n": n, "m3": m, "tag": "computed", "known_reference": known,
                    "nodes_expanded": r.nodes_expanded, "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
                }));
                let _ = writeln!(text, "{n:>3} {m:>3}  computed ({:.2}s)", r.elapsed.as_secs_f64());
            }
            other => {
                if status == Status::Ok {
                    status = Status::BudgetExceeded;
                }
                let refuted = other.map(|r| r.refuted).unwrap_or_default();
                rows.push(json!({ "n": n, "m3": null, "tag": "timeout", "refuted": refuted, "known_reference": known }));
                let _ = writeln!(text, "{n:>3}   -  timeout");
            }
        }
    }
    let _ = writeln!(text, "total {:.2}s", start.elapsed().as_secs_f64());
    let mut out = CommandResult::new(
        status,
        json!({ "rows": rows, "elapsed_ms": start.elapsed().as_secs_f64() * 1e3, "lower_bound": if theorem_bound { "theorem" } else { "1" } }),
        text,
    );
    out.diagnostics = diagnostics;
    Ok(out)
}

pub fn verify(arg: &str) -> Result<CommandResult> {
    let p = load_placement(arg)?;
    let n = p.n();
    let three = p.has_three_in_line();
    let addable = p.addable_squares()?;
    let lonely = p.lonely_queens();
    let good = p.is_good();
    let payload = json!({
        "n": n,
        "size": p.len(),
        "three_in_line": three,
        "maximal": !three && addable.is_empty(),
        "good": good,
        "lonely": squares_value(&lonely, n),
        "defined_lines_per_slope": per_slope_value(p.defined_lines_per_slope()),
        "addable": squares_value(&addable, n),
        "placement": placement_value(&p),
    });
    let mut text = String::new();
    let _ = writeln!(text, "{} queens on {n}x{n}", p.len());
    let _ = writeln!(text, "three in line: {three}");
    let _ = writeln!(text, "good: {good}");
    let lonely_names: Vec<String> = lonely.iter().map(Square::algebraic).collect();
    let _ = writeln!(text, "lonely queens: {} {}", lonely.len(), lonely_names.join(" "));
    let [v, h, dp, dm] = p.defined_lines_per_slope();
    let _ = writeln!(text, "defined lines: v {v}  h {h}  d+ {dp}  d- {dm}");
    let addable_names: Vec<String> = addable.iter().map(Square::algebraic).collect();
    let _ = writeln!(text, "addable squares: {} {}", addable.len(), addable_names.join(" "));
    text.push_str(&p.render_ascii());
    Ok(CommandResult::new(Status::Ok, payload, text))
}

pub fn certify_case2(arg: &str) -> Result<CommandResult> {
    let p = load_placement(arg)?;
    let data = match Case2Data::from_placement(&p) {
        Ok(d) => d,
        Err(e) => return Ok(CommandResult::error(Status::Fail, e.to_string())),
    };
    let k = data.k;
    let grid = ZeroSumGrid::centered(2 * k as i64);
    let mut polys = Vec::new();
    let mut all_equal = true;
    let mut text = String::new();
    let _ = writeln!(text, "Case 2, k = {k}, lonely queen at {:?}", data.lonely_square);
    for w in Case2Poly::ALL {
        let fp = data.product(w);
        let dp = fp.coeff(4 * k, 4 * k);
        let closed = data.closed_form(w);
        let equal = dp == closed;
        all_equal &= equal;
        let point = find_nonvanishing(&fp, &grid);
        let _ = writeln!(text, "{}: coeff {dp}  closed form {closed}  {}", w.name(), pass_fail(equal));
        polys.push(json!({
            "poly": w.name(),
            "lonely_slope": w.lonely_slope(),
            "degree": fp.degree(),
            "coefficient": dp.to_string(),
            "closed_form": closed.to_string(),
            "equal": equal,
            "nonvanishing_point": point,
        }));
    }
    let v = CaseTwoVector::from_data(&data);
    let report = classify_report(&v, k, CoefficientSystem::Exact)?;
    let _ = writeln!(text, "classification: {}", report.class);
    let payload = json!({
        "case": 2,
        "k": k,
        "lonely": data.lonely,
        "intercepts": data.intercepts,
        "polynomials": polys,
        "vector": v,
        "classification": report.class,
        "violated_rows": report.violated_rows,
    });
    Ok(CommandResult::new(if all_equal { Status::Ok } else { Status::Fail }, payload, text))
}

pub fn certify_case1(arg: &str, slopes: &[Slope]) -> Result<CommandResult> {
    let p = load_placement(arg)?;
    let n = p.n();
    if n % 4 != 1 {
        return Ok(CommandResult::error(Status::Unsupported, PolyError::NotFourKPlusOne(n).to_string()));
    }
    let chosen = if slopes.is_empty() { balanced_lonely_slopes(&p) } else { slopes.to_vec() };
    let data = match Case1Data::from_placement(&p, &chosen) {
        Ok(d) => d,
        Err(e) => return Ok(CommandResult::error(Status::Fail, e.to_string())),
    };
    let k = data.k;
    let fp = data.product();
    let coeff = fp.coeff(4 * k, 4 * k);
    let expected = omega(k);
    let equal = coeff == expected;
    let point = find_nonvanishing(&fp, ZeroSumGrid::centered(2 * k as i64));
    let mut text = String::new();
    let _ = writeln!(text, "Case 1, k = {k}, lonely slopes {:?}", chosen.iter().map(|s| s.short_name()).collect::<Vec<_>>());
    let _ = writeln!(text, "f: degree {}  coeff {coeff}  expected {expected}  {}", fp.degree(), pass_fail(equal));
    match point {
        Some((x, y)) => {
            let _ = writeln!(text, "nonvanishing at centered ({x}, {y}): that square is not covered");
        }
        None => {
            let _ = writeln!(text, "vanishes on the whole board");
        }
    }
    let payload = json!({
        "case": 1,
        "k": k,
        "lonely_slopes": chosen,
        "intercepts": data.intercepts(),
        "filler": data.filler,
        "degree": fp.degree(),
        "coefficient": coeff.to_string(),
        "expected": expected.to_string(),
        "equal": equal,
        "nonvanishing_point": point,
    });
    Ok(CommandResult::new(if equal { Status::Ok } else { Status::Fail }, payload, text))
}

fn rows_value(m: &gardner::certificate::RationalMatrix) -> Value {
    serde_json::to_value(m).unwrap()
}

pub fn nullspace(k: usize, exact: bool) -> Result<CommandResult> {
    let system = if exact { CoefficientSystem::Exact } else { CoefficientSystem::Printed };
    let a = match build_a_with(k, system) {
        Ok(a) => a,
        Err(e) => return Ok(CommandResult::error(Status::Unsupported, e.to_string())),
    };
    let r = a.rref();
    let basis = a.nullspace();
    let basis_strings: Vec<Vec<String>> = basis.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
    let matches_printed = basis == vec![printed_null_vector()];
    let mut text = String::new();
    let _ = writeln!(text, "k = {k}, w = {}{}", omega(k), if exact { " (exact system)" } else { "" });
    let _ = writeln!(text, "columns: {}", CaseTwoVector::LABELS.join(" "));
    let _ = writeln!(text, "A =\n{a}");
    let _ = writeln!(text, "rref(A) =\n{r}");
    for b in &basis_strings {
        let _ = writeln!(text, "null vector: [{}]", b.join(", "));
    }
    let payload = json!({
        "k": k,
        "omega": omega(k).to_string(),
        "system": if exact { "exact" } else { "printed" },
        "columns": CaseTwoVector::LABELS,
        "matrix": rows_value(&a),
        "rref": rows_value(&r),
        "nullspace": basis_strings,
        "matches_printed_vector": matches_printed,
    });
    Ok(CommandResult::new(Status::Ok, payload, text))
}

pub fn classify(arg: &str) -> Result<CommandResult> {
    let p = load_placement(arg)?;
    let v = match extract_case2_vector(&p) {
        Ok(v) => v,
        Err(e) => return Ok(CommandResult::error(Status::Fail, e.to_string())),
    };
    let k = (p.n() - 1) / 4;
    let exact = classify_report(&v, k, CoefficientSystem::Exact)?;
    let printed = classify_report(&v, k, CoefficientSystem::Printed)?;
    let mut text = String::new();
    for (label, value) in CaseTwoVector::LABELS.iter().zip(v.entries()) {
        let _ = writeln!(text, "{label:>10} = {value}");
    }
    let _ = writeln!(text, "class: {}", exact.class);
    if !exact.violated_rows.is_empty() {
        let _ = writeln!(text, "nonzero rows: {:?}", exact.violated_rows);
    }
    let payload = json!({
        "k": k,
        "vector": v,
        "classification": exact.class,
        "violated_rows": exact.violated_rows,
        "residuals": exact.residuals.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "printed_system": { "classification": printed.class, "violated_rows": printed.violated_rows },
    });
    Ok(CommandResult::new(Status::Ok, payload, text))
}

fn parse_seed(s: &str) -> Result<(i64, i64)> {
    let (x, y) = s.split_once(',').with_context(|| format!("seed {s:?} is not x,y"))?;
    Ok((x.trim().parse()?, y.trim().parse()?))
}

pub fn construct(n: usize, seeds: &[String], all: bool) -> Result<CommandResult> {
    let sets = if all {
        enumerate_seeds(n)
    } else if seeds.is_empty() {
        enumerate_seeds(n).map(|v| v.into_iter().take(1).collect())
    } else {
        let parsed = seeds.iter().map(|s| parse_seed(s)).collect::<Result<Vec<_>>>()?;
        SeedSet::new(n, parsed).map(|s| vec![s])
    };
    let sets = match sets {
        Ok(s) => s,
        Err(e @ ConstructionError::Unsupported(_)) => return Ok(CommandResult::error(Status::Unsupported, e.to_string())),
        Err(e) => return Ok(CommandResult::error(Status::Fail, e.to_string())),
    };
    let mut items = Vec::new();
    let mut text = String::new();
    let mut all_pass = true;
    for s in &sets {
        let p = octagon_placement(s, n)?;
        let report = validate_null_a(&p);
        all_pass &= report.pass;
        let addable = p.addable_squares()?;
        let _ = writeln!(text, "seeds {:?}: null vector {}, good {}", s.seeds(), pass_fail(report.pass), p.is_good());
        text.push_str(&p.render_ascii());
        text.push('\n');
        items.push(json!({
            "seeds": s.seeds(),
            "placement": placement_value(&p),
            "ascii": p.render_ascii(),
            "good": p.is_good(),
            "addable": squares_value(&addable, n),
            "report": report,
        }));
    }
    let _ = writeln!(text, "{} placement(s)", sets.len());
    Ok(CommandResult::new(
        if all_pass { Status::Ok } else { Status::Fail },
        json!({ "n": n, "count": sets.len(), "placements": items }),
        text,
    ))
}

pub fn encode_cnf(n: usize, q: usize, out: Option<&Path>) -> Result<CommandResult> {
    let inst = match encode(n, q) {
        Ok(i) => i,
        Err(e) => return Ok(CommandResult::error(Status::Fail, e.to_string())),
    };
    let dimacs = inst.to_dimacs();
    let groups: Vec<Value> = inst
        .group_ranges()
        .iter()
        .map(|&(g, a, b)| json!({ "group": g, "first": a + 1, "last": b }))
        .collect();
    let mut payload = json!({
        "n": n, "q": q,
        "variables": inst.num_vars(),
        "clauses": inst.clauses().len(),
        "groups": groups,
    });
    let text = match out {
        Some(path) => {
            std::fs::write(path, &dimacs).with_context(|| format!("writing {}", path.display()))?;
            payload["path"] = json!(path.display().to_string());
            format!("wrote {} ({} variables, {} clauses)", path.display(), inst.num_vars(), inst.clauses().len())
        }
        None => {
            payload["dimacs"] = json!(dimacs);
            dimacs
        }
    };
    Ok(CommandResult::new(Status::Ok, payload, text))
}

pub fn check_model(cnf: &Path, model: &Path) -> Result<CommandResult> {
    let d = Dimacs::parse(&std::fs::read_to_string(cnf).with_context(|| format!("reading {}", cnf.display()))?)?;
    let m = parse_model(&std::fs::read_to_string(model).with_context(|| format!("reading {}", model.display()))?)?;
    if let Some(s) = m.status.as_deref().filter(|s| s.starts_with("UNSAT")) {
        return Ok(CommandResult::error(Status::Fail, format!("solver reported {s}; nothing to decode")));
    }
    let a = Assignment::from_literals(&m.literals, d.num_vars)?;
    let unsat = match d.unsatisfied(&a) {
        Ok(u) => u,
        Err(e) => return Ok(CommandResult::error(Status::Fail, e.to_string())),
    };
    if !unsat.is_empty() {
        let first: Vec<usize> = unsat.iter().take(10).map(|i| i + 1).collect();
        let mut r = CommandResult::new(
            Status::Fail,
            json!({ "satisfied": false, "unsatisfied_clauses": unsat.len(), "first_unsatisfied": first }),
            format!("{} clauses unsatisfied, first {:?}", unsat.len(), first),
        );
        r.diagnostics.push("model does not satisfy the formula".into());
        return Ok(r);
    }
    let p = match d.decode(&a) {
        Ok(p) => p,
        Err(e) => return Ok(CommandResult::error(Status::Fail, e.to_string())),
    };
    let good = p.is_good();
    let mut text = format!("model satisfies all {} clauses\n{} queens, good: {good}\n", d.clauses.len(), p.len());
    text.push_str(&p.render_ascii());
    Ok(CommandResult::new(
        if good { Status::Ok } else { Status::Fail },
        json!({ "satisfied": true, "good": good, "placement": placement_value(&p) }),
        text,
    ))
}
