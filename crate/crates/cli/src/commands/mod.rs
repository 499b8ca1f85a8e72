pub mod check;
pub mod reduce;
pub mod simulate;
pub mod verify;

/// Print the bundled case and model ids.
pub fn list() {
    println!("exact-solution cases (verify-exact --case <id>):");
    for id in liecheck::exact_case_ids() {
        println!("  {id}");
    }
    println!("simulation models (simulate --model <id>):");
    for id in ["hm-reduced", "hm-2d", "vlasov"] {
        println!("  {id}");
    }
    println!("finite transforms (vlasov config `transform.id`):");
    for id in ["x2", "x3", "x4", "x5"] {
        println!("  {id}");
    }
    println!("bundled definition files live under paper/ (systems .sys, generators .gen, conditions .cond)");
}
