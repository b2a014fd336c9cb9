//! Writes a small known-answer file, parses it back and re-verifies it.
//!
//! ```text
//! cargo run --release --example kat_files -- [count] [params]
//! ```

use rudraksh::kat::{default_entropy, generate, KatFile};
use rudraksh::ParamName;

fn main() -> rudraksh::Result<()> {
    let mut args = std::env::args().skip(1);
    let count: u32 = args
        .next()
        .map(|s| s.parse().expect("record count"))
        .unwrap_or(3);
    let params: ParamName = args.next().as_deref().unwrap_or("poly64").parse()?;

    let file = generate(params, count, &default_entropy());
    let text = file.to_rsp();
    let header = text.lines().take_while(|l| l.starts_with('#')).count();
    for line in text
        .lines()
        .skip(header)
        .skip_while(|l| l.is_empty())
        .take_while(|l| !l.is_empty())
    {
        let shown = if line.len() > 100 {
            format!("{}...", &line[..100])
        } else {
            line.to_string()
        };
        println!("{shown}");
    }
    println!("...");

    let parsed = KatFile::parse(&text)?;
    parsed.verify()?;
    println!(
        "{} records for {} regenerate byte for byte",
        parsed.records.len(),
        parsed.params
    );

    let mut broken = text.replacen("ss = ", "ss = 00", 1);
    broken.push('\n');
    match KatFile::parse(&broken).and_then(|f| f.verify()) {
        Ok(()) => println!("corrupted file unexpectedly verified"),
        Err(e) => println!("corrupted file: {e}"),
    }
    Ok(())
}
