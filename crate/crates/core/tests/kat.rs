//! Known-answer files checked into `tests/data` must regenerate exactly.

use rudraksh::ascon::xof;
use rudraksh::codec::{deserialize_ct, deserialize_pk, deserialize_sk};
use rudraksh::kat::{default_entropy, generate, KatFile};
use rudraksh::{Kem, ParamName, ParamSet};

fn fixture(name: ParamName) -> String {
    let path = format!("{}/tests/data/kat_{}.rsp", env!("CARGO_MANIFEST_DIR"), name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn checked_in_files_regenerate() {
    for name in ParamName::ALL {
        let text = fixture(name);
        assert_eq!(
            generate(name, 3, &default_entropy()).to_rsp(),
            text,
            "{name}"
        );
        let parsed = KatFile::parse(&text).unwrap();
        assert_eq!(parsed.params, name);
        parsed.verify().unwrap();
    }
}

#[test]
fn records_are_consistent_kem_transcripts() {
    for name in ParamName::ALL {
        let ps = ParamSet::get(name);
        let kem = Kem::new(name);
        for r in KatFile::parse(&fixture(name)).unwrap().records {
            let pk = deserialize_pk(&r.pk, ps).unwrap();
            let sk = deserialize_sk(&r.sk, ps).unwrap();
            assert_eq!(sk.pk, pk);
            let ct = deserialize_ct(&r.ct, ps).unwrap();
            assert_eq!(kem.decaps(&sk, &ct).as_bytes().as_slice(), r.ss.as_slice());
        }
    }
}

/// Digests of the 100-record files, pinned when the format was fixed.
#[test]
fn hundred_record_digests() {
    let pinned = [
        (
            ParamName::Poly32,
            "a17bbc03273df08938868995edfcb4247621bcee8b55601299d96c01999ace88",
        ),
        (
            ParamName::Poly64,
            "d2ddd89b4b60292654232005a368a248e8b3400f08667bce955ff884d26bad32",
        ),
        (
            ParamName::Poly128,
            "c5c8190daf96761cc631d3eca6e9ed64a4fac185787eba44242dd5472b3e79f3",
        ),
    ];
    for (name, digest) in pinned {
        let text = generate(name, 100, &default_entropy()).to_rsp();
        assert_eq!(hex::encode(xof(text.as_bytes(), 32)), digest, "{name}");
    }
}

#[test]
fn entropy_changes_every_record() {
    let a = generate(ParamName::Poly128, 2, &default_entropy());
    let b = generate(ParamName::Poly128, 2, &[0xff; 48]);
    for (x, y) in a.records.iter().zip(&b.records) {
        assert_ne!(x.seed, y.seed);
        assert_ne!(x.ss, y.ss);
    }
}

#[test]
fn malformed_files() {
    assert!(KatFile::parse("count = 0\nseed = 00\n").is_err());
    let text = fixture(ParamName::Poly64);
    assert!(KatFile::parse(&text.replace("ss = ", "tag = ")).is_err());
    assert!(KatFile::parse(&text.replacen("\nseed = ", "\nseed = zz", 1)).is_err());
}
