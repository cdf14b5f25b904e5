// Triangle boundary and its image under one recursion step, as CSV.

use zerocert::cli::region_csv_text;
use zerocert::model::SpinParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = SpinParams::new(3.0, 0.8, 11)?;
    let (csv, slack) = region_csv_text(&p, 41.0, 0.01, 64)?;
    println!("{} rows, min slack {slack:.3e}", csv.lines().count() - 1);
    println!("{}", csv.lines().take(4).collect::<Vec<_>>().join("\n"));
    assert!(slack > 0.0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
