macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        #[path = $file]
        mod $name;
    };
}

example!(reduction_instance, "../examples/reduction_instance.rs");
example!(counterexample, "../examples/counterexample.rs");
example!(witness, "../examples/witness.rs");
example!(deadline_flow, "../examples/deadline_flow.rs");
example!(exact_solver, "../examples/exact_solver.rs");
example!(audit, "../examples/audit.rs");
example!(gantt_svg, "../examples/gantt_svg.rs");

#[test]
fn reduction_instance_example_runs() {
    let out = reduction_instance::run_example().unwrap();
    assert!(out.starts_with("k=3 b=3 machines=3 jobs=22 L=110 threshold=30"));
}

#[test]
fn counterexample_example_runs() {
    let out = counterexample::run_example().unwrap();
    assert!(out.contains("verification: Valid"));
    assert!(out.contains("total tardiness: 30 (threshold 30)"));
    assert!(out.contains("ClaimRefuted"));
}

#[test]
fn witness_example_runs() {
    let out = witness::run_example().unwrap();
    assert!(out.lines().all(|l| l.ends_with("solves=true")));
    assert!(out.contains("a=[1, 2, 3] I={3} ∑T=30 (b³+b=30) extracted={3}"));
}

#[test]
fn deadline_flow_example_runs() {
    let out = deadline_flow::run_example().unwrap();
    assert!(out.contains("valid: true"));
    assert!(out.contains("one machine feasible: false"));
}

#[test]
fn exact_solver_example_runs() {
    let out = exact_solver::run_example().unwrap();
    let value = |prefix: &str| {
        out.lines()
            .find_map(|l| l.strip_prefix(prefix))
            .and_then(|rest| rest.split_whitespace().next())
            .unwrap()
            .to_string()
    };
    assert_eq!(value("branch and bound: "), value("oracle: "));
}

#[test]
fn audit_example_runs() {
    let out = audit::run_example().unwrap();
    assert!(out.contains("a=[1, 2, 3] b=3 solvable=true"));
}

#[test]
fn gantt_svg_example_runs() {
    let out = gantt_svg::run_example().unwrap();
    assert!(out.starts_with("<svg"));
}
