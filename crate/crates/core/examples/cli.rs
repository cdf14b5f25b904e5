// Driving the command-line front end in-process.

use zerocert::cli::{run, GraphFile};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("zerocert-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let graph = dir.join("k3.json");
    let file = GraphFile { n: 3, edges: vec![[0, 1], [1, 2], [0, 2]], pins: Default::default() };
    std::fs::write(&graph, serde_json::to_string(&file)?)?;
    let code = run(["zerocert", "partition", "--graph", graph.to_str().unwrap(), "--lambda", "1"]);
    assert_eq!(code, 0);
    let code = run(["zerocert", "certify", "bounded", "--beta", "3", "--gamma", "0.8", "--delta", "11"]);
    println!("missing --lambda0 exits with {code}");
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
