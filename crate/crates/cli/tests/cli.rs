//! End-to-end tests that drive the compiled `mmretinex` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mmretinex::{histogram_equalize, rgb_to_hsv};
use mmretinex_cli::imgio::load_rgb;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_mmretinex")
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Writes a textured grayscale PNG whose side is the caller's choice.
fn write_textured(path: &Path, side: u32, phase: u32) {
    let img = image::GrayImage::from_fn(side, side, |x, y| {
        image::Luma([(80 + (y * 13 + x * 7 + phase) % 90) as u8])
    });
    img.save(path).unwrap();
}

struct Fixture {
    _dir: tempfile::TempDir,
    root: PathBuf,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        Fixture { _dir: dir, root }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    fn textured(&self, name: &str, side: u32, phase: u32) -> PathBuf {
        let p = self.path(name);
        write_textured(&p, side, phase);
        p
    }
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("enhance") && text.contains("bench"));
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_eq!(run(&[]).status.code(), Some(1));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(run(&["enhance", "--bogus"]).status.code(), Some(1));
}

#[test]
fn unknown_method_is_a_usage_error() {
    let fx = Fixture::new();
    let input = fx.textured("in.png", 32, 0);
    let out = fx.path("out.png");
    let result = run(&[
        "enhance",
        "--method",
        "clahe",
        "--in",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
}

#[test]
fn malformed_sigmas_are_usage_errors() {
    let fx = Fixture::new();
    let input = fx.textured("in.png", 32, 0);
    let out = fx.path("out.png");
    for sigmas in ["0.06,0.31", "a,b,c", "0,0.31,0.98"] {
        let result = run(&[
            "enhance",
            "--method",
            "proposed",
            "--in",
            input.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--sigmas",
            sigmas,
        ]);
        assert_eq!(result.status.code(), Some(1), "sigmas={sigmas}");
    }
}

#[test]
fn missing_input_is_an_io_error() {
    let fx = Fixture::new();
    let out = fx.path("out.png");
    let result = run(&[
        "enhance",
        "--method",
        "he",
        "--in",
        "/definitely/not/here.png",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn indivisible_side_is_a_geometry_error() {
    let fx = Fixture::new();
    let input = fx.textured("odd.png", 30, 0);
    let out = fx.path("out.png");
    let result = run(&[
        "enhance",
        "--method",
        "proposed",
        "--in",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(3));
}

#[test]
fn proposed_enhancement_writes_a_loadable_deterministic_image() {
    let fx = Fixture::new();
    let input = fx.textured("in.png", 32, 3);
    let out_a = fx.path("a.png");
    let out_b = fx.path("b.png");
    for out in [&out_a, &out_b] {
        let result = run(&[
            "enhance",
            "--method",
            "proposed",
            "--in",
            input.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(result.status.code(), Some(0), "{result:?}");
        assert!(stdout_of(&result).contains("black_spots=0"));
    }
    let (img, _) = load_rgb(&out_a).unwrap();
    assert_eq!((img.width(), img.height()), (32, 32));
    // Identical inputs and config give bit-identical files.
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );
}

#[test]
fn he_via_binary_matches_the_library() {
    let fx = Fixture::new();
    let input = fx.textured("in.png", 32, 1);
    let out = fx.path("out.png");
    let result = run(&[
        "enhance",
        "--method",
        "he",
        "--in",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    let (orig, _) = load_rgb(&input).unwrap();
    let (enhanced, _) = load_rgb(&out).unwrap();
    let expect = histogram_equalize(&rgb_to_hsv(&orig).v);
    // Equalized levels are integers, so the 8-bit file stores them exactly.
    assert_eq!(rgb_to_hsv(&enhanced).v.as_slice(), expect.as_slice());
}

#[test]
fn naive_merge_request_runs_as_chao_and_darkens_holes() {
    let fx = Fixture::new();
    let input = fx.textured("in.png", 32, 2);
    let out = fx.path("out.png");
    let result = run(&[
        "enhance",
        "--method",
        "proposed",
        "--in",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--merge",
        "naive",
    ]);
    assert_eq!(result.status.code(), Some(0));
    let text = stdout_of(&result);
    assert!(text.contains("method=chao"), "{text}");
    assert!(!text.contains("black_spots=0"), "{text}");
}

#[test]
fn pgm_input_stays_grayscale_through_the_pipeline() {
    let fx = Fixture::new();
    let input = fx.path("in.pgm");
    let img = image::GrayImage::from_fn(32, 32, |x, y| image::Luma([(60 + (x * y) % 120) as u8]));
    img.save(&input).unwrap();
    let out = fx.path("out.pgm");
    let result = run(&[
        "enhance",
        "--method",
        "msr",
        "--in",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let decoded = image::open(&out).unwrap();
    assert!(matches!(decoded, image::DynamicImage::ImageLuma8(_)));
    assert_eq!(decoded.width(), 32);
}

#[test]
fn assess_emits_energy_json() {
    let fx = Fixture::new();
    let original = fx.textured("orig.png", 32, 4);
    let enhanced = fx.path("enh.png");
    let status = run(&[
        "enhance",
        "--method",
        "he",
        "--in",
        original.to_str().unwrap(),
        "--out",
        enhanced.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));

    for family in ["db2", "haar"] {
        let result = run(&[
            "assess",
            "--original",
            original.to_str().unwrap(),
            "--enhanced",
            enhanced.to_str().unwrap(),
            "--wavelet",
            family,
        ]);
        assert_eq!(result.status.code(), Some(0));
        let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&result)).unwrap();
        assert_eq!(parsed["wavelet"], family);
        for side in ["original", "enhanced"] {
            let awe = parsed[side]["awe"].as_f64().unwrap();
            let dwe = parsed[side]["dwe"].as_f64().unwrap();
            assert!((awe + dwe - 100.0).abs() < 1e-6);
        }
        assert!(parsed["detail_improved"].is_boolean());
    }
}

#[test]
fn bench_writes_csv_and_json_tables() {
    let fx = Fixture::new();
    fx.textured("a.png", 32, 0);
    fx.textured("b.png", 32, 9);
    let csv_path = fx.path("report.csv");
    let result = run(&[
        "bench",
        "--in",
        fx.root.to_str().unwrap(),
        "--methods",
        "he,proposed",
        "--report",
        "csv",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "image_id,method,awe,dwe,time_ms,black_spots"
    );
    // Two images, each with a reference row plus two method rows.
    assert_eq!(lines.count(), 6);

    let json_path = fx.path("report.json");
    let result = run(&[
        "bench",
        "--in",
        fx.root.to_str().unwrap(),
        "--methods",
        "he,proposed",
        "--report",
        "json",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["image_id"], "a");
    assert_eq!(rows[0]["method"], "original");
    assert_eq!(rows[3]["image_id"], "b");
}

#[test]
fn bench_skips_unprocessable_images_but_succeeds() {
    let fx = Fixture::new();
    fx.textured("good.png", 32, 0);
    fx.textured("odd.png", 30, 0);
    let out = fx.path("report.csv");
    let result = run(&[
        "bench",
        "--in",
        fx.root.to_str().unwrap(),
        "--methods",
        "proposed",
        "--report",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&result.stderr).contains("skipped"));
    let text = std::fs::read_to_string(&out).unwrap();
    // good: reference + proposed; odd: reference only (proposed skipped).
    assert_eq!(text.lines().count(), 1 + 3);
}

#[test]
fn bench_on_missing_directory_is_an_io_error() {
    let fx = Fixture::new();
    let out = fx.path("report.csv");
    let result = run(&[
        "bench",
        "--in",
        "/definitely/not/here",
        "--methods",
        "he",
        "--report",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
}
