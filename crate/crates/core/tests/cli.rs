use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn vcpc(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcpc"))
        .arg("--out")
        .arg(out)
        .args(args)
        .env_remove("VCPC_OUT")
        .output()
        .expect("binary runs")
}

fn ok(out: &Path, args: &[&str]) -> String {
    let o = vcpc(out, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

/// Every subcommand in one pipeline, writing into `dir`.
fn pipeline(dir: &Path) {
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let common = ["--threads", "1", "--seed", "17"];
    let run = |args: &[&str]| ok(dir, &[&common[..], args].concat());
    run(&["gen-hs", "--n", "30", "--m", "30", "--k", "4", "--name", "hs"]);
    run(&["gen-er", "--n", "20", "--p", "0.5", "--name", "sg"]);
    run(&["encode", "--hs", &p("hs.hs"), "--name", "hs"]);
    run(&["encode", "--ising", &p("sg.ising"), "--name", "sg"]);
    run(&["colour", "--model", &p("hs.hubo")]);
    run(&["solve-sa", "--model", &p("hs.hubo"), "--steps", "50", "--iters", "4", "--reps", "3"]);
    run(&["solve-pt", "--model", &p("sg.hubo"), "--replicas", "4", "--iters", "300", "--reps", "2"]);
    run(&["quadratise", "--model", &p("hs.hubo")]);
    run(&["sparsify", "--ising", &p("sg.ising"), "--budget", "4"]);
    run(&["sparsify", "--ising", &p("sg.ising"), "--sweep"]);
    run(&["tsp-kmc", "--instance", "burma14", "--levels", "4", "--penalties", "1000,1400"]);
    run(&["tts", "--iters", "2000", "--n", "1024", "--freq", "2.7e9"]);
}

#[test]
fn single_threaded_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    pipeline(a.path());
    pipeline(b.path());
    let (sa, sb) = (snapshot(a.path()), snapshot(b.path()));
    assert!(sa.len() >= 15, "{:?}", sa.keys());
    assert_eq!(sa.keys().collect::<Vec<_>>(), sb.keys().collect::<Vec<_>>());
    for (name, bytes) in &sa {
        if name.ends_with(".manifest.json") {
            let strip = |v: &[u8]| String::from_utf8_lossy(v).replace(&*a.path().to_string_lossy(), "").replace(&*b.path().to_string_lossy(), "");
            assert_eq!(strip(bytes), strip(&sb[name]), "{name}");
        } else {
            assert_eq!(bytes, &sb[name], "{name}");
        }
    }
}

#[test]
fn inputs_are_left_untouched() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["--seed", "1", "gen-hs", "--n", "12", "--m", "12", "--k", "3", "--name", "h"]);
    let input = dir.path().join("h.hs");
    let before = fs::read(&input).unwrap();
    let out = dir.path().join("out");
    ok(&out, &["encode", "--hs", &input.to_string_lossy()]);
    assert_eq!(fs::read(&input).unwrap(), before);
    assert!(out.join("model.hubo").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(vcpc(d, &[]).status.code(), Some(2));
    assert_eq!(vcpc(d, &["solve-sa"]).status.code(), Some(2));
    assert_eq!(vcpc(d, &["--threads", "0", "tts", "--iters", "1", "--n", "2", "--freq", "1"]).status.code(), Some(2));
    assert_eq!(vcpc(d, &["colour", "--model", "/nonexistent/model.hubo"]).status.code(), Some(1));
    assert_eq!(vcpc(d, &["tts", "--iters", "1", "--n", "2", "--freq", "0"]).status.code(), Some(1));
    assert_eq!(vcpc(d, &["tsp-kmc", "--instance", "burma14", "--levels", "4", "--penalties", "1000"]).status.code(), Some(2));
}

#[test]
fn tts_prints_the_landmark() {
    let dir = tempfile::tempdir().unwrap();
    let text = ok(dir.path(), &["--format", "json", "tts", "--iters", "2000", "--n", "1024", "--freq", "2.7e9"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let s = v["seconds"].as_f64().unwrap();
    assert!((1.0e-5..=2.0e-5).contains(&s), "{s}");
}

#[test]
fn study_manifest_replays() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("study.toml");
    fs::write(
        &spec,
        "kind = \"sg-er\"\nseed = 4\n[problem]\nsizes = [12]\ndensities = [0.5]\ninstances = 3\n\
         [solver.sa]\ntemp_range = [0.074, 0.74]\nsteps = 200\niters = 1\nreps = 1\n",
    )
    .unwrap();
    let out = dir.path().join("run");
    ok(&out, &["--threads", "1", "study", &spec.to_string_lossy()]);
    assert!(out.join("sg_er.csv").exists());
    let replay = ok(&out, &["--format", "json", "study", "--replay", &out.join("manifest.json").to_string_lossy()]);
    let v: serde_json::Value = serde_json::from_str(&replay).unwrap();
    assert_eq!(v["identical"], serde_json::Value::Bool(true), "{replay}");
    fs::write(out.join("sg_er.csv"), "tampered\n").unwrap();
    let o = vcpc(&out, &["study", "--replay", &out.join("manifest.json").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(1));
}
