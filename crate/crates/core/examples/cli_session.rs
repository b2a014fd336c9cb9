//! Drives the command-line front end in-process: keygen, encaps, decaps.
//!
//! ```text
//! cargo run --release --example cli_session
//! ```

use std::fs;

use rudraksh::cli::run;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("rudraksh-example-{}", std::process::id()));
    fs::create_dir_all(&dir)?;
    let p = |f: &str| dir.join(f).display().to_string();
    let mut out = std::io::stdout();

    run(
        [
            "rudraksh",
            "keygen",
            "--out-pk",
            &p("pk"),
            "--out-sk",
            &p("sk"),
        ],
        &mut out,
    )?;
    run(
        [
            "rudraksh",
            "encaps",
            "--pk",
            &p("pk"),
            "--out-ct",
            &p("ct"),
            "--out-ss",
            &p("ss1"),
        ],
        &mut out,
    )?;
    run(
        [
            "rudraksh",
            "decaps",
            "--sk",
            &p("sk"),
            "--ct",
            &p("ct"),
            "--out-ss",
            &p("ss2"),
        ],
        &mut out,
    )?;

    for f in ["pk", "sk", "ct"] {
        println!("{f}: {} bytes", fs::metadata(p(f))?.len());
    }
    println!(
        "shared keys equal: {}",
        fs::read(p("ss1"))? == fs::read(p("ss2"))?
    );
    run(["rudraksh", "analyze"], &mut out)?;
    fs::remove_dir_all(&dir)?;
    Ok(())
}
