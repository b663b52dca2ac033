// Canonical program order and the per-length counts of each machine.

use compfront::machines::{program_count, MachineConfig, MachineKind, ProgramSpace};

pub fn run_example() -> compfront::Result<()> {
    let config = MachineConfig::default();

    let space = ProgramSpace::new(MachineKind::Rule110, 3, &config);
    let listed: Vec<String> = space.iter().map(|p| p.to_string()).collect();
    println!("rule110 up to 3 cells: {}", listed.join(" "));

    let bf = ProgramSpace::new(MachineKind::Brainfuck, 2, &config);
    println!("brainfuck up to 2 symbols: {} programs, #9 is {}", bf.len(), bf.get(9));

    let tag = ProgramSpace::new(MachineKind::Tag2, 2, &config);
    println!("tag2 up to 2 symbols: {} programs, the last is {}", tag.len(), tag.get(tag.len() - 1));

    println!("\n{:>4} {:>16} {:>16} {:>16}", "L", "brainfuck", "tag2", "rule110");
    for l in [1, 2, 4, 8, 11, 13, 16] {
        println!(
            "{l:>4} {:>16} {:>16} {:>16}",
            program_count(MachineKind::Brainfuck, l, &config),
            program_count(MachineKind::Tag2, l, &config),
            program_count(MachineKind::Rule110, l, &config),
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
