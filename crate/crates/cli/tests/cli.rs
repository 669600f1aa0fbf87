use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use holopipe::imagecore::{load_depth, save_depth, DepthMap, ViewManifest};

fn holopipe(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holopipe"))
        .current_dir(dir)
        .args(args)
        .env_remove("HOLOPIPE_SEED")
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = holopipe(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn files_with(dir: &Path, suffix: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.to_string_lossy().ends_with(suffix))
        .collect();
    v.sort();
    v
}

fn small_dataset(root: &Path) -> PathBuf {
    ok(root, &["gen", "--shape", "sphere", "--views", "16", "--width", "64", "--height", "36", "--out", "data"]);
    root.join("data")
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn column(rows: &[Vec<String>], name: &str) -> Vec<String> {
    let i = rows[0].iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows[1..].iter().map(|r| r[i].clone()).collect()
}

#[test]
fn version_and_help() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok(dir.path(), &["--version"]);
    assert_eq!(v.trim(), format!("holopipe {}", env!("CARGO_PKG_VERSION")));
    for sub in ["gen", "synth", "encode", "recon", "eval"] {
        assert!(ok(dir.path(), &[sub, "--help"]).contains("Usage"));
    }
}

#[test]
fn gen_writes_views_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let data = small_dataset(dir.path());
    assert_eq!(files_with(&data, "_rgb.png").len(), 16);
    assert_eq!(files_with(&data, "_depth.png").len(), 16);
    let m = ViewManifest::load(data.join("manifest.json")).unwrap();
    assert_eq!((m.view_count, m.width, m.height), (16, 64, 36));

    let before: Vec<Vec<u8>> = files_with(&data, ".png").iter().map(|p| fs::read(p).unwrap()).collect();
    ok(dir.path(), &["--jobs", "1", "gen", "--shape", "sphere", "--views", "16", "--width", "64", "--height", "36", "--out", "data"]);
    let after: Vec<Vec<u8>> = files_with(&data, ".png").iter().map(|p| fs::read(p).unwrap()).collect();
    assert_eq!(before, after);
}

#[test]
fn invalid_shape_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = holopipe(dir.path(), &["gen", "--shape", "pyramid", "--out", "d"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("shape"));

    fs::write(dir.path().join("c.toml"), "[scene]\nshape = \"pyramid\"\n").unwrap();
    let out = holopipe(dir.path(), &["--config", "c.toml", "gen"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("scene.shape"));

    fs::write(dir.path().join("u.toml"), "[scene]\nviews = 3\n").unwrap();
    assert_eq!(code(&holopipe(dir.path(), &["--config", "u.toml", "gen"])), 2);
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("c.toml"),
        "[scene]\nshape = \"cube\"\nview_count = 4\nwidth = 32\nheight = 18\n[paths]\ndata = \"fromfile\"\n",
    )
    .unwrap();
    let manifest = |sub: &str| ViewManifest::load(dir.path().join(sub).join("manifest.json")).unwrap();

    ok(dir.path(), &["--config", "c.toml", "gen"]);
    assert_eq!(manifest("fromfile").view_count, 4);

    let out = Command::new(env!("CARGO_BIN_EXE_holopipe"))
        .current_dir(dir.path())
        .args(["--config", "c.toml", "gen", "--out", "env"])
        .env("HOLOPIPE_SCENE__VIEW_COUNT", "6")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(manifest("env").view_count, 6);

    let out = Command::new(env!("CARGO_BIN_EXE_holopipe"))
        .current_dir(dir.path())
        .args(["--config", "c.toml", "gen", "--views", "5", "--out", "flag"])
        .env("HOLOPIPE_SCENE__VIEW_COUNT", "6")
        .output()
        .unwrap();
    assert!(out.status.success());
    let m = manifest("flag");
    assert_eq!((m.view_count, m.object_name.name()), (5, "cube"));
}

#[test]
fn missing_manifest_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&holopipe(dir.path(), &["synth", "--data", "nowhere"])), 3);
}

#[test]
fn synth_from_ground_truth_and_external_depth() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let data = small_dataset(root);
    ok(root, &["synth", "--data", "data", "--views", "0-3", "--layers", "16", "--out", "gt"]);
    let cflds = files_with(&root.join("gt"), ".cfld");
    assert_eq!(cflds.len(), 12);
    assert!(root.join("gt/holograms.json").exists());

    // Identical depth from another directory gives byte-identical holograms.
    let ext = root.join("ext");
    fs::create_dir(&ext).unwrap();
    for p in files_with(&data, "_depth.png") {
        fs::copy(&p, ext.join(p.file_name().unwrap())).unwrap();
    }
    ok(root, &["--jobs", "1", "synth", "--data", "data", "--views", "0-3", "--layers", "16", "--depth-dir", "ext", "--out", "ext_holo"]);
    for p in &cflds {
        let q = root.join("ext_holo").join(p.file_name().unwrap());
        assert_eq!(fs::read(p).unwrap(), fs::read(&q).unwrap(), "{}", q.display());
    }

    // Wrong size: data mismatch naming the file.
    let bad = ext.join("sphere_0002_depth.png");
    save_depth(&DepthMap::filled(10, 10, 3).unwrap(), &bad).unwrap();
    let out = holopipe(root, &["synth", "--data", "data", "--views", "0-3", "--depth-dir", "ext", "--out", "x"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("sphere_0002_depth.png"));

    // Missing file: per-view failure, other views still written.
    fs::remove_file(&bad).unwrap();
    let out = holopipe(root, &["synth", "--data", "data", "--views", "0-3", "--depth-dir", "ext", "--out", "y"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("view 2"));
    assert_eq!(files_with(&root.join("y"), ".cfld").len(), 9);
}

#[test]
fn encode_and_recon() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    small_dataset(root);
    ok(root, &["synth", "--data", "data", "--views", "5", "--out", "holo"]);
    ok(root, &["encode", "--holograms", "holo", "--out", "slm"]);
    assert_eq!(files_with(&root.join("slm"), ".png").len(), 3);
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(root.join("slm/sphere_0005_slm.json")).unwrap()).unwrap();
    assert_eq!(sidecar["slm"]["width"], 3840);
    assert_eq!(sidecar["hologram_width"], 64);

    let stdout = ok(
        root,
        &["recon", "--holograms", "holo", "--out", "rec", "--distance", "0.15", "--sweep", "0.12:0.28:8", "--region", "8,4,48,28"],
    );
    assert!(stdout.contains("focus peak"));
    for c in ["r", "g", "b", "rgb"] {
        assert!(root.join(format!("rec/sphere_0005_z0.15000_{c}.png")).exists());
    }
    let rows = csv_rows(&root.join("rec/sphere_0005_focus.csv"));
    assert_eq!(rows[0], ["distance", "region", "score"]);
    assert_eq!(rows.len(), 1 + 9);

    let out = holopipe(root, &["recon", "--holograms", "holo", "--out", "rec2", "--distance", "2.0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn eval_self_comparison_and_shift() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let data = small_dataset(root);
    let out = ok(root, &["eval", "--data", "data", "--out", "self"]);
    assert!(out.contains(" ± "));
    let rows = csv_rows(&root.join("self/report.csv"));
    assert_eq!(rows.len(), 17);
    assert!(column(&rows, "mse").iter().all(|v| v == "0"));
    assert!(column(&rows, "ssim").iter().all(|v| v == "1"));
    assert!(column(&rows, "acc").iter().all(|v| v == "1"));
    assert!(column(&rows, "psnr_db").iter().all(|v| v == "inf"));
    assert!(column(&rows, "cgh_acc_r").iter().all(String::is_empty));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(root.join("self/report.json")).unwrap()).unwrap();
    assert_eq!(json["objects"]["sphere"]["view_count"], 16);
    assert_eq!(json["objects"]["sphere"]["views"][0]["psnr_db"], "inf");

    let shifted = root.join("shifted");
    fs::create_dir(&shifted).unwrap();
    for p in files_with(&data, "_depth.png") {
        let d = load_depth(&p).unwrap();
        let data = d.data().iter().map(|&g| g + 1).collect();
        save_depth(&DepthMap::new(d.width(), d.height(), data).unwrap(), shifted.join(p.file_name().unwrap())).unwrap();
    }
    ok(root, &["eval", "--data", "data", "--estimate", "shifted", "--out", "shift"]);
    let rows = csv_rows(&root.join("shift/report.csv"));
    assert!(column(&rows, "mse").iter().all(|v| v == "1"));
    assert!(column(&rows, "rmse").iter().all(|v| (v.parse::<f64>().unwrap() - 1.0 / 255.0).abs() < 1e-15));
    let summary = csv_rows(&root.join("shift/summary.csv"));
    assert_eq!(column(&summary, "mse"), ["1.0000 ± 0.0000"]);
}

#[test]
fn eval_with_hologram_columns() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let data = small_dataset(root);
    let noisy = root.join("noisy");
    fs::create_dir(&noisy).unwrap();
    for p in files_with(&data, "_depth.png") {
        let d = load_depth(&p).unwrap();
        let v = d.data().iter().enumerate().map(|(i, &g)| if g > 0 && i % 3 == 0 { g.saturating_sub(20) } else { g }).collect();
        save_depth(&DepthMap::new(d.width(), d.height(), v).unwrap(), noisy.join(p.file_name().unwrap())).unwrap();
    }
    ok(root, &["synth", "--data", "data", "--split", "test", "--out", "h_gt"]);
    ok(root, &["synth", "--data", "data", "--split", "test", "--depth-dir", "noisy", "--out", "h_est"]);
    ok(
        root,
        &["eval", "--data", "data", "--split", "test", "--estimate", "noisy", "--truth-holograms", "h_gt", "--estimate-holograms", "h_est", "--out", "ev"],
    );
    let rows = csv_rows(&root.join("ev/report.csv"));
    let m = ViewManifest::load(data.join("manifest.json")).unwrap();
    assert_eq!(rows.len() - 1, m.count(holopipe::imagecore::SplitTag::Test));
    for c in ["cgh_acc_r", "cgh_acc_g", "cgh_acc_b"] {
        for v in column(&rows, c) {
            let x: f64 = v.parse().unwrap();
            assert!(x > 0.0 && x < 1.0, "{c} = {x}");
        }
    }

    // Against itself every colour scores exactly 1.
    ok(root, &["eval", "--data", "data", "--split", "test", "--truth-holograms", "h_gt", "--estimate-holograms", "h_gt", "--out", "ev_self"]);
    let rows = csv_rows(&root.join("ev_self/report.csv"));
    assert!(column(&rows, "cgh_acc_g").iter().all(|v| v == "1"));

    // Holograms missing for a requested view: data mismatch.
    let out = holopipe(root, &["eval", "--data", "data", "--views", "0", "--truth-holograms", "h_gt", "--estimate-holograms", "h_est", "--out", "ev_bad"]);
    assert_eq!(code(&out), 4);
}
