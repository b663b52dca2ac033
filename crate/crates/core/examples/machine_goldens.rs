// Run a handful of hand-checked programs on each interpreter.
//
// ```text
// cargo run --example machine_goldens
// ```

use compfront::machines::{execute, MachineConfig, Program, RunOutcome, TagRules};

fn show(label: &str, program: &Program, config: &MachineConfig) -> RunOutcome {
    let outcome = execute(program, config);
    println!("{label:<28} {:>6.2} bits  {outcome:?}", program.description_bits());
    outcome
}

pub fn run_example() -> compfront::Result<()> {
    let config = MachineConfig::default();

    println!("brainfuck");
    for code in ["+.", "+[-].", "++[-].", "+++[.-]", "-.", "+[]", "+]"] {
        show(&format!("  {code}"), &Program::brainfuck(code)?, &config);
    }

    println!("2-tag, start word aaa");
    let rules = TagRules::new("H", "a", "a")?;
    let out = show(&format!("  {rules}"), &Program::tag2(rules), &config);
    assert_eq!(out, RunOutcome::Halted { runtime: 3, output: b"H".to_vec() });
    let rules = TagRules::new("bc", "a", "aaaH")?;
    show(&format!("  {rules}"), &Program::tag2(rules), &config);

    println!("rule 110, 64 cells");
    for bits in ["1", "11", "1011"] {
        show(&format!("  {bits}"), &Program::rule110(bits)?, &config);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
