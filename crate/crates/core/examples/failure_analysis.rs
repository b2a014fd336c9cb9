//! Reproduces the parameter table: failure exponents, sizes and the memory model.
//!
//! ```text
//! cargo run --release --example failure_analysis
//! ```

use rudraksh::analysis::{render_markdown, table1_report};

fn main() -> Result<(), rudraksh::Error> {
    let rows = table1_report()?;
    print!("{}", render_markdown(&rows));
    for row in &rows {
        println!(
            "{}: computed log2 failure {:.2} (published {})",
            row.params.name.label(),
            row.log2_failure,
            row.published.log2_failure
        );
    }
    Ok(())
}
