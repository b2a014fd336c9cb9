use std::fs;
use std::path::Path;

use rudraksh::cli::{run, CliError};

fn cli(args: &[&str]) -> Result<String, CliError> {
    let mut out = Vec::new();
    let mut full = vec!["rudraksh"];
    full.extend_from_slice(args);
    run(full, &mut out)?;
    Ok(String::from_utf8(out).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

const SEED: &str = "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f202122232425262728292a2b2c2d2e2f";

#[test]
fn keygen_encaps_decaps_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n| path(dir.path(), n);
    for params in ["poly32", "poly64", "poly128"] {
        cli(&[
            "--params",
            params,
            "keygen",
            "--out-pk",
            &p("pk"),
            "--out-sk",
            &p("sk"),
        ])
        .unwrap();
        cli(&[
            "--params",
            params,
            "encaps",
            "--pk",
            &p("pk"),
            "--out-ct",
            &p("ct"),
            "--out-ss",
            &p("ss1"),
        ])
        .unwrap();
        cli(&[
            "--params",
            params,
            "decaps",
            "--sk",
            &p("sk"),
            "--ct",
            &p("ct"),
            "--out-ss",
            &p("ss2"),
        ])
        .unwrap();
        let ss = fs::read(p("ss1")).unwrap();
        assert_eq!(ss.len(), 16);
        assert_eq!(ss, fs::read(p("ss2")).unwrap(), "{params}");
    }
}

#[test]
fn seeded_keygen_is_deterministic_and_sized() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n| path(dir.path(), n);
    cli(&[
        "keygen",
        "--seed",
        SEED,
        "--out-pk",
        &p("pk1"),
        "--out-sk",
        &p("sk1"),
    ])
    .unwrap();
    cli(&[
        "keygen",
        "--seed",
        SEED,
        "--out-pk",
        &p("pk2"),
        "--out-sk",
        &p("sk2"),
    ])
    .unwrap();
    assert_eq!(fs::read(p("pk1")).unwrap(), fs::read(p("pk2")).unwrap());
    assert_eq!(fs::read(p("pk1")).unwrap().len(), 952);
    assert_eq!(fs::read(p("sk1")).unwrap().len(), 1920);

    let coins = "ffeeddccbbaa99887766554433221100";
    cli(&[
        "encaps",
        "--pk",
        &p("pk1"),
        "--coins",
        coins,
        "--out-ct",
        &p("ct1"),
        "--out-ss",
        &p("k1"),
    ])
    .unwrap();
    cli(&[
        "encaps",
        "--pk",
        &p("pk1"),
        "--coins",
        coins,
        "--out-ct",
        &p("ct2"),
        "--out-ss",
        &p("k2"),
    ])
    .unwrap();
    assert_eq!(fs::read(p("ct1")).unwrap(), fs::read(p("ct2")).unwrap());
    assert_eq!(fs::read(p("ct1")).unwrap().len(), 760);
}

#[test]
fn tampered_ciphertext_succeeds_with_other_key_truncated_fails() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n| path(dir.path(), n);
    cli(&[
        "keygen",
        "--seed",
        SEED,
        "--out-pk",
        &p("pk"),
        "--out-sk",
        &p("sk"),
    ])
    .unwrap();
    cli(&[
        "encaps",
        "--pk",
        &p("pk"),
        "--out-ct",
        &p("ct"),
        "--out-ss",
        &p("ss"),
    ])
    .unwrap();

    let mut ct = fs::read(p("ct")).unwrap();
    ct[17] ^= 0x40;
    fs::write(p("bad"), &ct).unwrap();
    cli(&[
        "decaps",
        "--sk",
        &p("sk"),
        "--ct",
        &p("bad"),
        "--out-ss",
        &p("ss_bad"),
    ])
    .unwrap();
    assert_ne!(fs::read(p("ss")).unwrap(), fs::read(p("ss_bad")).unwrap());

    fs::write(p("short"), &ct[..ct.len() - 1]).unwrap();
    let err = cli(&[
        "decaps",
        "--sk",
        &p("sk"),
        "--ct",
        &p("short"),
        "--out-ss",
        &p("x"),
    ])
    .unwrap_err();
    assert!(matches!(err, CliError::Lib(_)), "{err}");
}

#[test]
fn wrong_parameter_set_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n| path(dir.path(), n);
    cli(&[
        "--params",
        "poly64",
        "keygen",
        "--out-pk",
        &p("pk"),
        "--out-sk",
        &p("sk"),
    ])
    .unwrap();
    let err = cli(&[
        "--params",
        "poly128",
        "encaps",
        "--pk",
        &p("pk"),
        "--out-ct",
        &p("ct"),
        "--out-ss",
        &p("ss"),
    ])
    .unwrap_err();
    assert!(
        err.to_string().contains("expected 784 bytes, got 952"),
        "{err}"
    );
}

#[test]
fn bad_arguments() {
    assert!(matches!(
        cli(&["--params", "poly99", "keygen", "--out-pk", "a", "--out-sk", "b"]),
        Err(CliError::Args(_))
    ));
    assert!(matches!(cli(&["frobnicate"]), Err(CliError::Args(_))));
    let err = cli(&["keygen", "--seed", "abcd", "--out-pk", "a", "--out-sk", "b"]).unwrap_err();
    assert!(matches!(err, CliError::Hex { flag: "seed", .. }), "{err}");
    let err = cli(&[
        "decaps",
        "--sk",
        "/nonexistent/sk",
        "--ct",
        "c",
        "--out-ss",
        "s",
    ])
    .unwrap_err();
    assert!(matches!(err, CliError::Io { .. }));
}

#[test]
fn kat_generate_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "kat.rsp");
    cli(&["--params", "poly128", "kat", "--count", "4", "--out", &file]).unwrap();
    let report = cli(&["kat-verify", "--file", &file]).unwrap();
    assert!(report.contains("4 records verified"), "{report}");

    let text = fs::read_to_string(&file).unwrap();
    let idx = text.find("ct = ").unwrap() + 5;
    let mut bytes = text.into_bytes();
    bytes[idx] = if bytes[idx] == b'0' { b'1' } else { b'0' };
    fs::write(&file, bytes).unwrap();
    assert!(cli(&["kat-verify", "--file", &file]).is_err());
}

#[test]
fn analyze_outputs() {
    let md = cli(&["analyze", "--all"]).unwrap();
    for label in [
        "KEM-poly32",
        "KEM-poly64",
        "KEM-poly128",
        "Kyber",
        "NewHope",
    ] {
        assert!(md.contains(label), "{label} missing");
    }
    let csv = cli(&["--params", "poly128", "analyze", "--format", "csv"]).unwrap();
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(header.contains(','));
    assert!(lines.next().unwrap().starts_with("KEM-poly128,"));
}

#[test]
fn bench_reports_medians() {
    let out = cli(&["--params", "poly128", "bench", "--iters", "3"]).unwrap();
    for op in ["keygen", "encaps", "decaps"] {
        assert!(out.contains(op));
    }
}
