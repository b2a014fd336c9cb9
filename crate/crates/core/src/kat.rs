//! Known-answer test records in a NIST `.rsp`-like text format.
//!
//! Randomness comes from an Ascon-Xof counter generator:
//! `block(i) = xof(seed || le32(i), len)`. A master generator keyed with the
//! file's entropy yields one 48-byte seed per record (`i = count`); each
//! record's own generator yields the keygen coins (`i = 0`, 48 bytes) and
//! the encapsulation message (`i = 1`, 16 bytes).

use std::fmt::Write as _;

use crate::ascon::XofState;
use crate::codec::{serialize_ct, serialize_pk, serialize_sk};
use crate::error::{Error, Result};
use crate::kem::{Kem, ENCAPS_COINS, KEYGEN_COINS};
use crate::params::ParamName;

pub const KAT_SEED_BYTES: usize = 48;

/// Counter-mode Ascon-Xof generator.
#[derive(Clone, Debug)]
pub struct KatDrbg {
    seed: Vec<u8>,
    counter: u32,
}

impl KatDrbg {
    pub fn new(seed: &[u8]) -> Self {
        KatDrbg {
            seed: seed.to_vec(),
            counter: 0,
        }
    }

    /// Output block for an explicit counter value.
    pub fn block(&self, counter: u32, out: &mut [u8]) {
        let mut st = XofState::new();
        st.absorb(&self.seed);
        st.absorb(&counter.to_le_bytes());
        st.squeeze(out);
    }

    /// Next block; advances the counter.
    pub fn fill(&mut self, out: &mut [u8]) {
        self.block(self.counter, out);
        self.counter += 1;
    }
}

/// Default master entropy: bytes 0, 1, ..., 47.
pub fn default_entropy() -> [u8; KAT_SEED_BYTES] {
    core::array::from_fn(|i| i as u8)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatRecord {
    pub count: u32,
    pub seed: Vec<u8>,
    pub pk: Vec<u8>,
    pub sk: Vec<u8>,
    pub ct: Vec<u8>,
    pub ss: Vec<u8>,
}

impl KatRecord {
    pub fn from_seed(kem: &Kem, count: u32, seed: &[u8]) -> Self {
        let ps = kem.params();
        let mut drbg = KatDrbg::new(seed);
        let mut kg = [0u8; KEYGEN_COINS];
        let mut msg = [0u8; ENCAPS_COINS];
        drbg.fill(&mut kg);
        drbg.fill(&mut msg);
        let (pk, sk) = kem.keygen(&kg);
        let (ct, ss) = kem.encaps(&pk, &msg);
        let ss_check = kem.decaps(&sk, &ct);
        assert_eq!(ss, ss_check, "kat record {count}: decapsulation disagrees");
        KatRecord {
            count,
            seed: seed.to_vec(),
            pk: serialize_pk(&pk, ps),
            sk: serialize_sk(&sk, ps),
            ct: serialize_ct(&ct, ps),
            ss: ss.0.to_vec(),
        }
    }

    fn fields(&self) -> [(&'static str, &[u8]); 5] {
        [
            ("seed", &self.seed),
            ("pk", &self.pk),
            ("sk", &self.sk),
            ("ct", &self.ct),
            ("ss", &self.ss),
        ]
    }
}

/// A parsed or freshly generated KAT file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatFile {
    pub params: ParamName,
    pub entropy: Vec<u8>,
    pub records: Vec<KatRecord>,
}

fn record_seed(entropy: &[u8], count: u32) -> Vec<u8> {
    let mut seed = vec![0u8; KAT_SEED_BYTES];
    KatDrbg::new(entropy).block(count, &mut seed);
    seed
}

pub fn generate(params: ParamName, count: u32, entropy: &[u8]) -> KatFile {
    let kem = Kem::new(params);
    let records = (0..count)
        .map(|i| KatRecord::from_seed(&kem, i, &record_seed(entropy, i)))
        .collect();
    KatFile {
        params,
        entropy: entropy.to_vec(),
        records,
    }
}

impl KatFile {
    pub fn to_rsp(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.params.label());
        let _ = writeln!(out, "# params = {}", self.params);
        let _ = writeln!(out, "# drbg = ascon-xof(seed || le32(counter), len)");
        let _ = writeln!(out, "# record seed = drbg(entropy)[count], 48 bytes");
        let _ = writeln!(
            out,
            "# keygen coins = drbg(seed)[0], 48 bytes; encaps message = drbg(seed)[1], 16 bytes"
        );
        let _ = writeln!(out, "# entropy = {}", hex::encode_upper(&self.entropy));
        for r in &self.records {
            let _ = writeln!(out);
            let _ = writeln!(out, "count = {}", r.count);
            for (name, bytes) in r.fields() {
                let _ = writeln!(out, "{name} = {}", hex::encode_upper(bytes));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut params = None;
        let mut entropy = None;
        let mut records: Vec<KatRecord> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let bad = |msg: &str| Error::Kat(format!("line {}: {msg}", lineno + 1));
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((k, v)) = comment.split_once('=') {
                    match k.trim() {
                        "params" => params = Some(v.trim().parse::<ParamName>()?),
                        "entropy" => {
                            entropy = Some(hex::decode(v.trim()).map_err(|e| bad(&e.to_string()))?)
                        }
                        _ => {}
                    }
                }
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad("expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "count" {
                let count = value.parse().map_err(|_| bad("bad count"))?;
                records.push(KatRecord {
                    count,
                    seed: vec![],
                    pk: vec![],
                    sk: vec![],
                    ct: vec![],
                    ss: vec![],
                });
                continue;
            }
            let rec = records
                .last_mut()
                .ok_or_else(|| bad("field before first count"))?;
            let bytes = hex::decode(value).map_err(|e| bad(&format!("{key}: {e}")))?;
            match key {
                "seed" => rec.seed = bytes,
                "pk" => rec.pk = bytes,
                "sk" => rec.sk = bytes,
                "ct" => rec.ct = bytes,
                "ss" => rec.ss = bytes,
                other => return Err(bad(&format!("unknown field `{other}`"))),
            }
        }
        Ok(KatFile {
            params: params.ok_or_else(|| Error::Kat("missing `# params = ...` header".into()))?,
            entropy: entropy
                .ok_or_else(|| Error::Kat("missing `# entropy = ...` header".into()))?,
            records,
        })
    }

    /// Regenerates every record and reports the first divergent field.
    pub fn verify(&self) -> Result<()> {
        let kem = Kem::new(self.params);
        for r in &self.records {
            let seed = record_seed(&self.entropy, r.count);
            let fresh = KatRecord::from_seed(&kem, r.count, &seed);
            for ((name, got), (_, want)) in r.fields().into_iter().zip(fresh.fields()) {
                if got != want {
                    return Err(Error::Kat(format!(
                        "record {}: field `{name}` differs",
                        r.count
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drbg_counter_blocks() {
        let mut d = KatDrbg::new(b"seed");
        let mut a = [0u8; 20];
        let mut b = [0u8; 20];
        d.fill(&mut a);
        d.fill(&mut b);
        assert_ne!(a, b);
        let mut again = [0u8; 20];
        d.block(0, &mut again);
        assert_eq!(a, again);
        assert_eq!(a.to_vec(), crate::ascon::xof(b"seed\0\0\0\0", 20));
    }

    #[test]
    fn rsp_roundtrip_and_verify() {
        let file = generate(ParamName::Poly64, 3, &default_entropy());
        let text = file.to_rsp();
        let parsed = KatFile::parse(&text).unwrap();
        assert_eq!(parsed, file);
        parsed.verify().unwrap();
        assert_eq!(parsed.records[0].pk.len(), 952);
    }

    #[test]
    fn edited_digit_is_reported() {
        let file = generate(ParamName::Poly128, 2, &default_entropy());
        let text = file.to_rsp();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let idx = lines.iter().rposition(|l| l.starts_with("ct = ")).unwrap();
        let last = lines[idx].pop().unwrap();
        lines[idx].push(if last == '0' { '1' } else { '0' });
        let err = KatFile::parse(&lines.join("\n"))
            .unwrap()
            .verify()
            .unwrap_err();
        assert_eq!(err, Error::Kat("record 1: field `ct` differs".into()));
    }

    #[test]
    fn parse_errors() {
        assert!(KatFile::parse("count = 0\n").is_err());
        assert!(KatFile::parse("# params = poly64\n# entropy = 00\nseed = 00\n").is_err());
        assert!(
            KatFile::parse("# params = poly64\n# entropy = 00\ncount = 0\nseed = zz\n").is_err()
        );
    }
}
