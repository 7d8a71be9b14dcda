//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use apartness::enumeration::{oracle_agreement, Catalog, CatalogConfig, ORACLE_RATE, ORACLE_SEED};
use apartness::fixtures;
use apartness::io::{run_command, Command, Invocation};
use apartness::{BinaryRelation, Subset};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn expect(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn c3_complements() -> Outcome {
    let start = Instant::now();
    let ap = fixtures::c3();
    let c = ap.carrier().clone();
    let a = Subset::from_names(c.clone(), &["a"]).unwrap();
    let k = ap.classify_subset(&a).unwrap();
    expect(k.a_complement.names() == ["c"], "~{a} = {c}")?;
    expect(k.logical_complement.names() == ["b", "c"], "not {a} = {b,c}")?;
    expect(!k.is_qd.holds, "{a} is not qd")?;
    let alpha = BinaryRelation::from_names(c.clone(), &[("a", "c"), ("c", "a")]).unwrap();
    let comp = ap.a_complement_relation(&alpha).unwrap();
    let want = BinaryRelation::from_names(
        c,
        &[("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "a")],
    )
    .unwrap();
    expect(comp == want, "~{(a,c),(c,a)}")?;
    let t = start.elapsed();
    expect(t < Duration::from_secs(1), "runtime under 1 s")?;
    Ok(format!("{} us", t.as_micros()))
}

fn c5_tau5() -> Outcome {
    let ap = fixtures::c5();
    let tau = fixtures::tau5(&ap);
    let k = ap.classify_relation(&tau).unwrap();
    expect(k.co_quasiorder.holds, "TAU5 is a co-quasiorder")?;
    let want: [(&str, &[&str]); 5] = [
        ("a", &[]),
        ("b", &[]),
        ("c", &["a", "b"]),
        ("d", &["a", "b", "c"]),
        ("e", &["a", "b", "c", "d"]),
    ];
    for (i, (x, class_names)) in want.iter().enumerate() {
        let class = tau.left_class(i);
        expect(class.names() == *class_names, &format!("class of {x}"))?;
        expect(ap.classify_subset(&class).unwrap().is_sd.holds, &format!("class of {x} is sd"))?;
    }
    Ok(String::new())
}

fn sg5() -> Outcome {
    let sg = fixtures::sg5();
    let r = sg.report();
    expect(r.accepted(), "SG5 table validates")?;
    let tau = fixtures::tau5(sg.apartness());
    let p = sg.check_tau_properties(&tau).unwrap();
    expect(!p.complement_positive.holds, "TAU5 not complement positive")?;
    let w = p.complement_positive.render_witness(sg.carrier()).unwrap_or_default();
    expect(w == "(e,a)", &format!("witness (e,a), got {w}"))?;
    let (e, a) = (4, 0);
    let ea = sg.mul(e, a);
    expect(sg.carrier().name(ea) == "d" && tau.contains(e, ea), "(e,ea) = (e,d) in tau")?;
    Ok(format!("witness {w}, ea = d"))
}

fn sl3() -> Outcome {
    let sg = fixtures::sl3();
    let tau = fixtures::tau3(&sg);
    let c = sg.carrier();
    let p = sg.check_tau_properties(&tau).unwrap();
    expect(p.complement_positive.holds, "complement positive")?;
    let cm = p.constructive_cm.render_witness(c).unwrap_or_default();
    expect(cm == "(a,b,a)", &format!("constructive cm witness {cm}"))?;
    expect(c.name(sg.mul(0, 1)) == "c" && tau.contains(2, 0), "(ab,a) = (c,a) in tau")?;
    let ccm = p.complement_cm.render_witness(c).unwrap_or_default();
    expect(ccm == "(a,b,a)", &format!("complement cm witness {ccm}"))?;
    Ok("constructive_cm at (a,b,a), complement_cm at ((a,a),(b,a))".into())
}

fn verify(workers: usize) -> Result<(String, Duration), String> {
    let mut inv = Invocation::new(Command::Verify);
    inv.workers = workers;
    inv.input = Some(fixture("c5_sg5.json"));
    let start = Instant::now();
    let out = run_command(&inv).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    if !out.report.passed() {
        let failed: Vec<_> = out.report.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        return Err(format!("failed: {failed:?}"));
    }
    Ok((out.report.to_machine(), t))
}

fn suite(first: &Result<(String, Duration), String>) -> Outcome {
    let (text, t) = first.clone()?;
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    let coverage = &report["data"]["coverage"];
    let theorems = report["checks"].as_array().map_or(0, |c| c.len());
    expect(t < Duration::from_secs(120), &format!("single worker runtime {:.1} s", t.as_secs_f64()))?;
    Ok(format!(
        "{theorems} checks, 0 failures, {:.1} s at 1 worker, coverage {coverage}",
        t.as_secs_f64()
    ))
}

fn oracle() -> Outcome {
    let catalog = Catalog::build(CatalogConfig::default()).map_err(|e| e.to_string())?;
    let r = oracle_agreement(&catalog, ORACLE_SEED, ORACLE_RATE);
    expect(r.agrees(), &format!("{} disagreements", r.disagreements.len()))?;
    Ok(format!("seed {:#x}, rate {}, {} objects re-evaluated", ORACLE_SEED, ORACLE_RATE, r.total()))
}

fn determinism(first: &Result<(String, Duration), String>) -> Outcome {
    let (base, _) = first.clone()?;
    for workers in [1, 8] {
        let (again, _) = verify(workers)?;
        expect(again == base, &format!("report differs at {workers} workers"))?;
    }
    Ok(format!("{} bytes identical over 3 runs at 1, 1 and 8 workers", base.len()))
}

fn self_hosting() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(Command, &str, Option<&str>); 4] = [
        (Command::Quotient, "c3.json", Some("kappa")),
        (Command::Quotient, "c5_sg5.json", Some("kappa")),
        (Command::Cayley, "sl3.json", None),
        (Command::Cayley, "c5_sg5.json", None),
    ];
    for (i, (cmd, file, kappa)) in cases.iter().enumerate() {
        let mut inv = Invocation::new(*cmd);
        inv.input = Some(fixture(file));
        inv.kappa = kappa.map(String::from);
        let out = run_command(&inv).map_err(|e| format!("{file}: {e}"))?;
        let doc = out.emitted.ok_or(format!("{file}: no document emitted"))?;
        let path = dir.path().join(format!("{i}.json"));
        std::fs::write(&path, doc.to_json()).unwrap();
        let mut check = Invocation::new(Command::Check);
        check.input = Some(path);
        let back = run_command(&check).map_err(|e| format!("{file}: re-parse: {e}"))?;
        expect(back.exit_code() == 0, &format!("{file}: re-check exit {}", back.exit_code()))?;
    }
    Ok(format!("{} documents", cases.len()))
}

fn main() {
    let first = verify(1);
    let criteria: Vec<Criterion> = vec![
        ("1 C3 complements and qd", Box::new(c3_complements)),
        ("2 C5 TAU5 co-quasiorder and classes", Box::new(c5_tau5)),
        ("3 SG5 validation and positivity witness", Box::new(sg5)),
        ("4 SL3 TAU3 cm witnesses", Box::new(sl3)),
        ("5 theorem suite, exhaustive scope", Box::new(|| suite(&first))),
        ("6 oracle agreement", Box::new(oracle)),
        ("7 verify determinism", Box::new(|| determinism(&first))),
        ("8 self-hosting documents", Box::new(self_hosting)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) if detail.is_empty() => println!("PASS  {name}"),
            Ok(detail) => println!("PASS  {name}  ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({why})");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
