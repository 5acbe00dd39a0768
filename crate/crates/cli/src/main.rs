//! Command-line surface: analysis, classification, tiling verification,
//! wheel sampling, the randomized evidence harness and OBJ export.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use beltlab_core::belt::{belts, check_venkov, classify_fedorov, FedorovClass};
use beltlab_core::evidence::{run_evidence, EvidenceConfig};
use beltlab_core::fixture::Fixture;
use beltlab_core::tiling::{verify_k_fold, SamplePlan, Verdict};
use beltlab_core::wheel::{
    check_eq10, check_lemma10, is_proper_point, sample_proper_points, DEFAULT_TOL,
};
use beltlab_core::zonotope::Zonotope;

#[derive(Parser)]
#[command(
    name = "beltlab",
    about = "Exact zonotope belts, parallelohedron classification and k-fold tiling checks"
)]
struct Cli {
    /// Seed for all randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count (tiling samples or wheel points, per subcommand).
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Write the machine-readable report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Suppress human-readable output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Facet census, belt table, Venkov verdict, class and volume.
    Analyze {
        #[arg(long)]
        fixture: PathBuf,
    },
    /// Venkov criterion and Fedorov classification only.
    Classify {
        #[arg(long)]
        fixture: PathBuf,
    },
    /// Verify the fixture's claimed k-fold tiling by exact sampling.
    VerifyTiling {
        #[arg(long)]
        fixture: PathBuf,
    },
    /// Sample proper points on a belt and check the wheel identities.
    Wheel {
        #[arg(long)]
        fixture: PathBuf,
        /// Generator index of the belt.
        #[arg(long)]
        belt: usize,
    },
    /// Random zonotopes against candidate lattices; belt-bound shadow.
    Evidence {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Write the zonotope as an OBJ mesh, one object per facet.
    ExportObj {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Reporter {
    json_path: Option<PathBuf>,
    quiet: bool,
}

impl Reporter {
    fn emit(&self, report: &serde_json::Value, human: &str) {
        if let Some(path) = &self.json_path {
            let text = serde_json::to_string_pretty(report).expect("report serializes");
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
            }
        }
        if !self.quiet {
            println!("{human}");
        }
    }
}

fn angle_tolerance() -> Result<f64, String> {
    match std::env::var("BELTLAB_TOL") {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(raw) => {
            let tol: f64 = raw
                .parse()
                .map_err(|_| format!("BELTLAB_TOL {raw:?} is not a number"))?;
            if tol > 0.0 && tol <= 1e-6 {
                Ok(tol)
            } else {
                Err(format!("BELTLAB_TOL {tol} outside (0, 1e-6]"))
            }
        }
    }
}

fn load_fixture(path: &Path) -> Result<Fixture, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Fixture::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn class_fields(class: &FedorovClass) -> (&'static str, Option<usize>) {
    match class {
        FedorovClass::Parallelepiped => ("Parallelepiped", None),
        FedorovClass::HexagonalPrism => ("HexagonalPrism", None),
        FedorovClass::RhombicDodecahedron => ("RhombicDodecahedron", None),
        FedorovClass::ElongatedDodecahedron => ("ElongatedDodecahedron", None),
        FedorovClass::TruncatedOctahedron => ("TruncatedOctahedron", None),
        FedorovClass::NotParallelohedron { witness } => ("NotParallelohedron", Some(*witness)),
    }
}

fn classify_report(fixture: &Fixture, z: &Zonotope) -> serde_json::Value {
    let venkov = check_venkov(z);
    let (class, witness) = match classify_fedorov(z) {
        Ok(c) => class_fields(&c),
        Err(_) => ("UnclassifiableWithVenkovPass", None),
    };
    json!({
        "schema": 1,
        "fixture_hash": fixture.content_hash(),
        "venkov": venkov.ok,
        "belts": venkov.belts,
        "class": class,
        "witness": witness,
    })
}

fn cmd_analyze(fixture: &Fixture, rep: &Reporter) -> bool {
    let z = fixture.build_zonotope();
    let mut report = classify_report(fixture, &z);
    let quads = z.facets().iter().filter(|f| f.vertices.len() == 4).count();
    let hexes = z.facets().iter().filter(|f| f.vertices.len() == 6).count();
    let obj = report.as_object_mut().expect("report is an object");
    obj.insert("volume".into(), json!(z.volume().to_string()));
    obj.insert(
        "facets".into(),
        json!({
            "total": z.facets().len(),
            "parallelograms": quads,
            "hexagons": hexes,
        }),
    );
    obj.insert("vertices".into(), json!(z.vertices().len()));
    let mut human = format!(
        "volume {}  facets {}  vertices {}\n",
        z.volume(),
        z.facets().len(),
        z.vertices().len()
    );
    for b in belts(&z) {
        human.push_str(&format!(
            "belt of generator {}: {} facets\n",
            b.edge_gen,
            b.facets.len()
        ));
    }
    human.push_str(&format!("class: {}", report["class"].as_str().unwrap()));
    rep.emit(&report, &human);
    true
}

fn cmd_classify(fixture: &Fixture, rep: &Reporter) -> bool {
    let z = fixture.build_zonotope();
    let report = classify_report(fixture, &z);
    let human = format!(
        "venkov: {}  class: {}{}",
        report["venkov"],
        report["class"].as_str().unwrap(),
        match report["witness"].as_u64() {
            Some(w) => format!("  witness belt: generator {w}"),
            None => String::new(),
        }
    );
    rep.emit(&report, &human);
    true
}

fn cmd_verify(fixture: &Fixture, cli: &Cli, rep: &Reporter) -> Result<bool, String> {
    let z = fixture.build_zonotope();
    let ms = fixture.multiset().map_err(|e| e.to_string())?;
    let k = fixture.claimed_k().map_err(|e| e.to_string())?;
    let plan = SamplePlan::new(cli.seed, cli.samples);
    let cert = verify_k_fold(&z, &ms, k, &plan).map_err(|e| e.to_string())?;
    let ok = cert.verdict == Verdict::Verified;
    let report = json!({
        "schema": 1,
        "fixture_hash": fixture.content_hash(),
        "certificate": cert,
    });
    let human = format!(
        "k={k}: {}",
        match &cert.verdict {
            Verdict::Verified => format!("Verified ({} samples)", cert.samples_tested),
            Verdict::DensityMismatch { expected, actual } =>
                format!("DensityMismatch (expected {expected}, actual {actual})"),
            Verdict::CountMismatch => format!("CountMismatch ({} failures)", cert.failures.len()),
        }
    );
    rep.emit(&report, &human);
    Ok(ok)
}

fn cmd_wheel(fixture: &Fixture, belt: usize, cli: &Cli, rep: &Reporter) -> Result<bool, String> {
    let tol = angle_tolerance()?;
    let z = fixture.build_zonotope();
    if belt >= z.gens().len() {
        return Err(format!(
            "belt index {belt} out of range ({} generators)",
            z.gens().len()
        ));
    }
    let ms = fixture.multiset().map_err(|e| e.to_string())?;
    let k = fixture.claimed_k().map_err(|e| e.to_string())?;
    let cert =
        verify_k_fold(&z, &ms, k, &SamplePlan::new(cli.seed, 100)).map_err(|e| e.to_string())?;
    if cert.verdict != Verdict::Verified {
        let report = json!({
            "schema": 1,
            "fixture_hash": fixture.content_hash(),
            "error": "tiling did not verify",
            "certificate": cert,
        });
        rep.emit(&report, "tiling did not verify; wheel analysis skipped");
        return Ok(false);
    }
    let points =
        sample_proper_points(&z, &ms, belt, cli.samples, cli.seed).map_err(|e| e.to_string())?;
    let mut reports = Vec::with_capacity(points.len());
    let mut all_hold = true;
    for wp in &points {
        let wr = check_eq10(&z, &ms, k, wp, tol).map_err(|e| e.to_string())?;
        let proper = is_proper_point(&z, &ms, wp);
        let bound_ok = check_lemma10(&z, &ms, wp);
        all_hold &= wr.tau_balance && proper.proper && bound_ok;
        reports.push(json!({
            "report": wr,
            "proper": proper,
            "interior_bound_ok": bound_ok,
        }));
    }
    let report = json!({
        "schema": 1,
        "fixture_hash": fixture.content_hash(),
        "belt": belt,
        "points": reports,
        "all_hold": all_hold,
    });
    let human = format!(
        "{} proper points on belt {belt}: balance and bounds {}",
        points.len(),
        if all_hold { "hold" } else { "VIOLATED" }
    );
    rep.emit(&report, &human);
    Ok(all_hold)
}

fn cmd_evidence(trials: usize, cli: &Cli, rep: &Reporter) -> bool {
    let summary = run_evidence(&EvidenceConfig::new(cli.seed, trials));
    let ok = summary.violations.is_empty();
    let mut human = String::new();
    for row in &summary.rows {
        human.push_str(&format!(
            "trial {:3}  gens {}  max belt {:2}  verified k: {:?}\n",
            row.trial,
            row.generators.len(),
            row.max_belt,
            row.verified_ks
        ));
    }
    human.push_str(&format!(
        "verified pairs: {}  violations: {}",
        summary.verified_pairs,
        summary.violations.len()
    ));
    let report = json!({
        "schema": 1,
        "summary": summary,
    });
    rep.emit(&report, &human);
    ok
}

/// Formats with 12 significant digits in plain decimal notation.
fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{:.*}", decimals, x)
}

fn cmd_export_obj(fixture: &Fixture, out: &Path, rep: &Reporter) -> Result<bool, String> {
    let z = fixture.build_zonotope();
    let mut obj = String::from("# zonotope mesh\n");
    for v in z.vertices() {
        let [x, y, zc] = v.to_f64();
        obj.push_str(&format!(
            "v {} {} {}\n",
            fmt_sig12(x),
            fmt_sig12(y),
            fmt_sig12(zc)
        ));
    }
    let index_of = |p| 1 + z.vertices().partition_point(|v| v < p);
    let mut triangles = 0;
    for (fi, facet) in z.facets().iter().enumerate() {
        obj.push_str(&format!("o facet_{fi}\n"));
        let idx: Vec<usize> = facet.vertices.iter().map(index_of).collect();
        for t in 1..idx.len() - 1 {
            obj.push_str(&format!("f {} {} {}\n", idx[0], idx[t], idx[t + 1]));
            triangles += 1;
        }
    }
    std::fs::write(out, &obj).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    let report = json!({
        "schema": 1,
        "fixture_hash": fixture.content_hash(),
        "path": out.display().to_string(),
        "vertices": z.vertices().len(),
        "triangles": triangles,
    });
    rep.emit(
        &report,
        &format!(
            "wrote {} ({} vertices, {} triangles)",
            out.display(),
            z.vertices().len(),
            triangles
        ),
    );
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool, String> {
    // validate the tolerance override up front for every subcommand
    angle_tolerance()?;
    let rep = Reporter {
        json_path: cli.json.clone(),
        quiet: cli.quiet,
    };
    match &cli.cmd {
        Cmd::Analyze { fixture } => Ok(cmd_analyze(&load_fixture(fixture)?, &rep)),
        Cmd::Classify { fixture } => Ok(cmd_classify(&load_fixture(fixture)?, &rep)),
        Cmd::VerifyTiling { fixture } => cmd_verify(&load_fixture(fixture)?, cli, &rep),
        Cmd::Wheel { fixture, belt } => cmd_wheel(&load_fixture(fixture)?, *belt, cli, &rep),
        Cmd::Evidence { trials } => Ok(cmd_evidence(*trials, cli, &rep)),
        Cmd::ExportObj { fixture, out } => cmd_export_obj(&load_fixture(fixture)?, out, &rep),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
