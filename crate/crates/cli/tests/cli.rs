//! End-to-end checks of the binary: every subcommand, every exit code, and
//! byte determinism of seeded outputs.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use compec_core::codec::CodecParams;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compec"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn identity_passes_on_a_short_string() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.txt"), "0100\n").unwrap();
    let out = run(dir.path(), &["identity", "--in", "s.txt"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn catalan_encode_corrupt_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("info.txt"), "1\n").unwrap();
    let out = run(
        d,
        &[
            "encode", "--n", "14", "--t", "1", "--mode", "catalan", "--in", "info.txt", "--out",
            "cw.txt", "--multiset-out", "ms.txt",
        ],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let cw = fs::read_to_string(d.join("cw.txt")).unwrap();
    assert_eq!(cw.trim().len(), 14);

    // Untouched multiset decodes with zero corrections.
    let out = run(
        d,
        &["decode", "--n", "14", "--t", "1", "--mode", "catalan", "--in", "ms.txt", "--out",
          "info_hat.txt"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("corrections: 0\n"));
    assert_eq!(fs::read_to_string(d.join("info_hat.txt")).unwrap(), "1\n");

    // One random substitution is corrected and reported.
    let out = run(
        d,
        &["corrupt", "--in", "ms.txt", "--out", "noisy.txt", "--errors", "random:1", "--seed",
          "11", "--pattern-out", "pat.txt"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let pattern = fs::read_to_string(d.join("pat.txt")).unwrap();
    assert!(pattern.starts_with("# prng=chacha12/rand_chacha-0.3 seed=11\n"));
    let out = run(
        d,
        &["decode", "--n", "14", "--t", "1", "--mode", "catalan", "--in", "noisy.txt", "--out",
          "info2.txt"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("corrections: 1\n"));
    assert_eq!(fs::read_to_string(d.join("info2.txt")).unwrap(), "1\n");
}

#[test]
fn seeded_corruption_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("info.txt"), "10\n").unwrap();
    let out = run(
        d,
        &["encode", "--n", "16", "--t", "1", "--mode", "catalan", "--in", "info.txt", "--out",
          "cw.txt", "--multiset-out", "ms.txt"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    for round in ["a", "b"] {
        let noisy = format!("noisy_{round}.txt");
        let pat = format!("pat_{round}.txt");
        let out = run(
            d,
            &["corrupt", "--in", "ms.txt", "--out", &noisy, "--errors", "random:1", "--seed",
              "42", "--pattern-out", &pat],
        );
        assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    }
    assert_eq!(fs::read(d.join("noisy_a.txt")).unwrap(), fs::read(d.join("noisy_b.txt")).unwrap());
    assert_eq!(fs::read(d.join("pat_a.txt")).unwrap(), fs::read(d.join("pat_b.txt")).unwrap());
}

#[test]
fn roundtrip_rejects_lengths_below_the_redundancy_floor() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["roundtrip", "--n", "64", "--t", "1", "--trials", "3", "--seed", "7"],
    );
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("2642"), "stderr: {}", stderr(&out));
}

#[test]
fn catalan_roundtrip_campaign_reports_full_success() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(
        d,
        &["roundtrip", "--n", "16", "--t", "1", "--mode", "catalan", "--trials", "25", "--seed",
          "7", "--out", "table.tsv"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let table = fs::read_to_string(d.join("table.tsv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "# prng=chacha12/rand_chacha-0.3 seed=7 mode=catalan n=16 t=1");
    assert_eq!(lines[1], "trials\tsuccesses\tsuccess_rate\tmean_decode_ms");
    let row: Vec<&str> = lines[2].split('\t').collect();
    assert_eq!(&row[..3], &["25", "25", "1.000"]);
}

#[test]
fn malformed_multisets_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("bad.txt"), "garbage\n").unwrap();
    let out = run(
        d,
        &["decode", "--n", "14", "--t", "1", "--mode", "catalan", "--in", "bad.txt"],
    );
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn certify_passes_enumerated_books_and_fails_bad_ones() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(d, &["certify", "--n", "14", "--t", "1", "--mode", "catalan"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));

    // Distance 2 book cannot survive one substitution.
    fs::write(d.join("book.txt"), "0011\n0101\n").unwrap();
    let out = run(d, &["certify", "--t", "1", "--in", "book.txt"]);
    assert_eq!(exit_code(&out), 4);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn report_marks_feasibility_on_both_sides() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(d, &["report", "--n", "4096", "--t", "2"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[0], "4096");
    assert_eq!(row[7], "false");

    let out = run(d, &["report", "--n", "4654", "--t", "1"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[7], "true");
}

#[test]
fn codec_binary_corrects_one_error_and_rejects_two() {
    let n = 4654;
    let params = CodecParams::new(n, 1).expect("length clears the redundancy floor");
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let info: String = (0..params.info_len()).map(|i| if i % 3 == 0 { '1' } else { '0' }).collect();
    fs::write(d.join("info.txt"), format!("{info}\n")).unwrap();
    let out = run(
        d,
        &["encode", "--n", "4654", "--t", "1", "--in", "info.txt", "--out", "cw.txt",
          "--multiset-out", "ms.txt"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));

    let out = run(
        d,
        &["corrupt", "--in", "ms.txt", "--out", "noisy.txt", "--errors", "random:1", "--seed",
          "5", "--pattern-out", "pat.txt"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let out = run(
        d,
        &["decode", "--n", "4654", "--t", "1", "--in", "noisy.txt", "--out", "info_hat.txt"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("corrections: 1\n"));
    assert_eq!(fs::read_to_string(d.join("info_hat.txt")).unwrap(), format!("{info}\n"));

    // Two substitutions flip two even-class weight parities, which is beyond
    // what the construction promises at t=1; the decoder must say so.
    fs::write(d.join("two.txt"), "2 2:0 -> 1:1\n4 4:0 -> 3:1\n").unwrap();
    let out = run(d, &["corrupt", "--in", "ms.txt", "--out", "noisy2.txt", "--errors", "two.txt"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let out = run(d, &["decode", "--n", "4654", "--t", "1", "--in", "noisy2.txt"]);
    assert_eq!(exit_code(&out), 3, "stdout: {} stderr: {}", stdout(&out), stderr(&out));
}
