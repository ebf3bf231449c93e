use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use pkgrid::{
    angle_sequence, bicolored_components, boundary_walk, check_walk_clauses,
    decode as decode_model, encode, exhaustive_suite, has_bicolored_path, iterate_dc,
    normalized_view, parse_model, parse_params, partial_walks, pattern_coloring, random_suite,
    render_ascii, solve_sk, BicoloredComponent, ColorPair, Coloring, DcTrace, LemmaReport, Limits,
    PathWitness, SatError, Status, Vertex,
};

use crate::report::{path_json, Exit, Reporter};

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn show(col: &Coloring) {
    eprint!("{}", render_ascii(col));
}

pub fn solve(
    rows: usize,
    cols: usize,
    k: usize,
    max_colors: Option<usize>,
    node_cap: Option<u64>,
    time_cap: Option<f64>,
    out: Option<PathBuf>,
) -> Exit {
    let rep = Reporter::new(
        "solve",
        json!({"rows": rows, "cols": cols, "k": k, "max_colors": max_colors,
               "node_cap": node_cap, "time_cap": time_cap}),
    );
    let time_cap = match time_cap.map(Duration::try_from_secs_f64).transpose() {
        Ok(t) => t,
        Err(e) => return rep.fail(Exit::Usage, format!("--time-cap: {e}")),
    };
    let limits = Limits { node_cap, time_cap };
    let report = match solve_sk(rows, cols, k, max_colors, &limits) {
        Ok(r) => r,
        Err(e) => return rep.fail(Exit::Usage, e),
    };
    if let Some(w) = &report.witness {
        show(w);
        if let Some(path) = &out {
            if let Err(e) = write(path, &w.to_text()) {
                return rep.fail(Exit::Usage, e);
            }
        }
    }
    let exit = match report.status {
        Status::Proven => Exit::Ok,
        Status::Timeout => Exit::Timeout,
    };
    let text = report.witness.as_ref().map(Coloring::to_text);
    rep.finish(
        exit,
        json!({"value": report.value, "status": report.status, "total_nodes": report.total_nodes(),
               "witness_text": text, "report": report}),
    )
}

#[derive(Serialize)]
struct Verdict {
    proper: bool,
    /// Monochromatic edge, when improper.
    edge: Option<(Vertex, Vertex)>,
    witness: Option<PathWitness>,
    colors_used: usize,
}

pub fn verify(file: &Path, k: usize) -> Exit {
    let rep = Reporter::new("verify", json!({"file": path_json(file), "k": k}));
    let col = match read(file).and_then(|t| Coloring::parse(&t).map_err(|e| e.to_string())) {
        Ok(c) => c,
        Err(e) => return rep.fail(Exit::Usage, e),
    };
    show(&col);
    if let Some(edge) = col.monochromatic_edge() {
        eprintln!("monochromatic edge {}-{}", edge.0, edge.1);
        let v = Verdict {
            proper: false,
            edge: Some(edge),
            witness: None,
            colors_used: col.colors_used(),
        };
        return rep.finish(Exit::Failed, v);
    }
    let witness = match has_bicolored_path(&col, k) {
        Ok(w) => w,
        Err(e) => return rep.fail(Exit::Usage, e),
    };
    if let Some(w) = &witness {
        let path: Vec<String> = w.vertices.iter().map(|v| v.to_string()).collect();
        eprintln!("bicolored path: {}", path.join(" "));
    }
    let exit = if witness.is_some() {
        Exit::Failed
    } else {
        Exit::Ok
    };
    let v = Verdict {
        proper: true,
        edge: None,
        witness,
        colors_used: col.colors_used(),
    };
    rep.finish(exit, v)
}

pub fn pattern(rows: usize, cols: usize, k: usize, out: Option<PathBuf>) -> Exit {
    let rep = Reporter::new(
        "pattern",
        json!({"rows": rows, "cols": cols, "k": k, "out": out.as_deref().map(path_json)}),
    );
    if rows == 0 || cols == 0 || k < 3 {
        return rep.fail(
            Exit::Usage,
            "rows and cols must be positive and k at least 3",
        );
    }
    let Some(col) = pattern_coloring(rows, cols, k) else {
        return rep.fail(
            Exit::Usage,
            format!("the pattern needs rows <= k-3, got rows={rows} k={k}"),
        );
    };
    show(&col);
    let text = col.to_text();
    if let Some(path) = &out {
        if let Err(e) = write(path, &text) {
            return rep.fail(Exit::Usage, e);
        }
    }
    let clean = col.is_proper() && has_bicolored_path(&col, k).ok().flatten().is_none();
    let exit = if clean { Exit::Ok } else { Exit::Failed };
    rep.finish(
        exit,
        json!({"text": text, "verified": clean, "coloring": col}),
    )
}

#[derive(Serialize)]
struct WalkEntry {
    vertices: Vec<Vertex>,
    r: usize,
    /// Measured in the normalized frame.
    angles: Vec<u16>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma: Option<Result<LemmaReport, String>>,
}

#[derive(Serialize)]
struct ComponentEntry {
    #[serde(flatten)]
    component: BicoloredComponent,
    walks: Vec<WalkEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Result<DcTrace, String>>,
}

fn walks_for(
    col: &Coloring,
    comp: &BicoloredComponent,
    lemma: bool,
) -> Result<Vec<WalkEntry>, String> {
    let view = normalized_view(col, comp);
    let walk = boundary_walk(view.grid(), &view.component);
    let pws = partial_walks(view.grid(), &view.component, &walk).map_err(|e| e.to_string())?;
    Ok(pws
        .iter()
        .map(|pw| WalkEntry {
            vertices: pw.vertices.iter().map(|&v| view.to_original(v)).collect(),
            r: pw.r(),
            angles: angle_sequence(pw).unwrap_or_default(),
            lemma: lemma.then(|| {
                check_walk_clauses(&view.coloring, &view.component, pw).map_err(|e| e.to_string())
            }),
        })
        .collect())
}

pub fn analyze(
    file: &Path,
    pair: Option<(u8, u8)>,
    iterate: bool,
    step_cap: Option<usize>,
) -> Exit {
    let rep = Reporter::new(
        "analyze",
        json!({"file": path_json(file), "pair": pair, "iterate": iterate, "step_cap": step_cap}),
    );
    let col = match read(file).and_then(|t| Coloring::parse(&t).map_err(|e| e.to_string())) {
        Ok(c) => c,
        Err(e) => return rep.fail(Exit::Usage, e),
    };
    show(&col);
    let pairs: Vec<ColorPair> = match pair {
        Some((a, b)) if a.max(b) >= col.palette() => {
            return rep.fail(
                Exit::Usage,
                format!("pair {a},{b} outside palette of size {}", col.palette()),
            );
        }
        Some((a, b)) => vec![ColorPair::new(a, b).expect("distinct colors")],
        None => ColorPair::all(col.palette()).collect(),
    };
    let skipped = if col.palette() != 3 {
        Some(format!(
            "palette has {} colors, lemma checks need 3",
            col.palette()
        ))
    } else {
        col.monochromatic_edge()
            .map(|(a, b)| format!("coloring is not proper at {a}-{b}"))
    };
    let lemma = skipped.is_none();
    let cap = step_cap.unwrap_or(col.grid().vertex_count());
    let mut table = Vec::new();
    for p in pairs {
        for comp in bicolored_components(&col, p) {
            let walkable = comp.truly_bicolored && comp.class().touches_side();
            let walks = if walkable {
                match walks_for(&col, &comp, lemma) {
                    Ok(w) => w,
                    Err(e) => return rep.fail(Exit::Failed, e),
                }
            } else {
                Vec::new()
            };
            let trace = (iterate && lemma && walkable)
                .then(|| iterate_dc(&col, &comp, cap).map_err(|e| e.to_string()));
            table.push(ComponentEntry {
                component: comp,
                walks,
                trace,
            });
        }
    }
    let failures = table
        .iter()
        .flat_map(|c| &c.walks)
        .filter(|w| matches!(&w.lemma, Some(Ok(r)) if !r.all_hold()))
        .count();
    rep.finish(
        Exit::Ok,
        json!({"lemma_checks": if lemma { "run" } else { "skipped" }, "skip_reason": skipped,
               "walks_with_failed_clauses": failures, "components": table}),
    )
}

pub fn lemma_suite(
    rows: usize,
    cols: usize,
    random: bool,
    samples: usize,
    seed: Option<u64>,
    dump: Option<PathBuf>,
) -> Exit {
    let rep = Reporter::new(
        "lemma-suite",
        json!({"rows": rows, "cols": cols, "mode": if random { "random" } else { "exhaustive" },
               "samples": random.then_some(samples), "seed": seed,
               "dump": dump.as_deref().map(path_json)}),
    );
    let report = if random {
        let Some(seed) = seed else {
            return rep.fail(Exit::Usage, "random mode needs --seed");
        };
        random_suite(rows, cols, samples, seed)
    } else {
        exhaustive_suite(rows, cols)
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return rep.fail(Exit::Usage, e),
    };
    let mut dumped = Vec::new();
    if let Some(dir) = &dump {
        if !report.violations.is_empty() {
            if let Err(e) = fs::create_dir_all(dir) {
                return rep.fail(Exit::Usage, format!("{}: {e}", dir.display()));
            }
        }
        for (i, v) in report.violations.iter().enumerate() {
            let path = dir.join(format!("{i:03}_{}.txt", v.invariant));
            if let Err(e) = write(&path, &v.coloring) {
                return rep.fail(Exit::Usage, e);
            }
            dumped.push(path.display().to_string());
        }
    }
    eprintln!(
        "{} colorings, {} violations",
        report.colorings,
        report.total_violations()
    );
    let exit = if report.is_clean() {
        Exit::Ok
    } else {
        Exit::Failed
    };
    rep.finish(
        exit,
        json!({"clean": report.is_clean(), "dumped": dumped, "report": report}),
    )
}

pub fn cnf(rows: usize, cols: usize, k: usize, colors: usize, out: Option<PathBuf>) -> Exit {
    let rep = Reporter::new(
        "cnf",
        json!({"rows": rows, "cols": cols, "k": k, "colors": colors,
               "out": out.as_deref().map(path_json)}),
    );
    let inst = match encode(rows, cols, k, colors) {
        Ok(i) => i,
        Err(e) => return rep.fail(Exit::Usage, e),
    };
    let text = inst.to_dimacs();
    let embedded = match &out {
        Some(path) => {
            if let Err(e) = write(path, &text) {
                return rep.fail(Exit::Usage, e);
            }
            None
        }
        None => Some(text),
    };
    rep.finish(
        Exit::Ok,
        json!({"num_vars": inst.num_vars, "num_clauses": inst.clauses.len(),
               "counts": inst.counts, "paths": inst.paths.len(), "dimacs": embedded}),
    )
}

fn header(dimacs: &str) -> Option<(usize, usize)> {
    let line = dimacs.lines().find(|l| l.trim_start().starts_with("p "))?;
    let mut it = line.split_whitespace().skip(2);
    Some((it.next()?.parse().ok()?, it.next()?.parse().ok()?))
}

pub fn decode(cnf: &Path, model: &Path, out: Option<PathBuf>) -> Exit {
    let rep = Reporter::new(
        "decode",
        json!({"cnf": path_json(cnf), "model": path_json(model),
               "out": out.as_deref().map(path_json)}),
    );
    let (dimacs, model_text) = match read(cnf).and_then(|c| Ok((c, read(model)?))) {
        Ok(x) => x,
        Err(e) => return rep.fail(Exit::Usage, e),
    };
    let inst = match parse_params(&dimacs).and_then(|(m, n, k, c)| encode(m, n, k, c)) {
        Ok(i) => i,
        Err(e) => return rep.fail(Exit::Usage, e),
    };
    if header(&dimacs) != Some((inst.num_vars, inst.clauses.len())) {
        return rep.fail(
            Exit::Usage,
            format!(
                "`p cnf` line does not match the encoding ({} variables, {} clauses)",
                inst.num_vars,
                inst.clauses.len()
            ),
        );
    }
    let lits = match parse_model(&model_text) {
        Ok(l) => l,
        Err(e) => return rep.fail(Exit::Usage, e),
    };
    let col = match decode_model(&inst, &lits) {
        Ok(c) => c,
        Err(e @ (SatError::Parse { .. } | SatError::UnknownVariable(_))) => {
            return rep.fail(Exit::Usage, e)
        }
        Err(SatError::BicoloredPath(w)) => {
            let msg = format!(
                "decoded coloring has a bicolored path of order {}",
                w.order()
            );
            eprintln!("error: {msg}");
            return rep.finish(Exit::Failed, json!({"error": msg, "witness": w}));
        }
        Err(e) => return rep.fail(Exit::Failed, e),
    };
    show(&col);
    let text = col.to_text();
    if let Some(path) = &out {
        if let Err(e) = write(path, &text) {
            return rep.fail(Exit::Usage, e);
        }
    }
    rep.finish(
        Exit::Ok,
        json!({"text": text, "coloring": col, "verified": Value::Bool(true)}),
    )
}
