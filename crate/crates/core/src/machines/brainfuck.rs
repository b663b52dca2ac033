//! Brainfuck without input: 8-bit wrapping cells on a fixed tape.

use super::RunOutcome;

/// Instruction set in canonical enumeration order.
pub const BF_ALPHABET: [u8; 7] = [b'+', b'-', b'<', b'>', b'[', b']', b'.'];

/// Cells on the tape; the pointer starts at cell 0 and leaving the tape at
/// either end halts the program.
pub const BF_TAPE_LEN: usize = 4096;

/// Counter scan: no prefix closes more brackets than it opens, and the total
/// balance is zero.
pub fn bracket_balance_ok(code: &[u8]) -> bool {
    let mut depth: i64 = 0;
    for &c in code {
        match c {
            b'[' => depth += 1,
            b']' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

fn jump_table(code: &[u8]) -> Option<Vec<usize>> {
    let mut jumps = vec![0; code.len()];
    let mut stack = Vec::new();
    for (i, &c) in code.iter().enumerate() {
        match c {
            b'[' => stack.push(i),
            b']' => {
                let open = stack.pop()?;
                jumps[open] = i;
                jumps[i] = open;
            }
            _ => {}
        }
    }
    stack.is_empty().then_some(jumps)
}

/// Every executed instruction, including both bracket jumps, costs one step.
/// `tape` must be zeroed on entry and is left zeroed on return.
pub(super) fn run(code: &[u8], max_steps: u64, tape: &mut [u8]) -> RunOutcome {
    let Some(jumps) = jump_table(code) else {
        return RunOutcome::Invalid;
    };
    let mut output = Vec::new();
    let mut ip = 0usize;
    let mut ptr = 0usize;
    let mut touched = 0usize;
    let mut steps = 0u64;
    let outcome = loop {
        if ip >= code.len() {
            break RunOutcome::Halted { runtime: steps, output };
        }
        if steps == max_steps {
            break RunOutcome::Timeout;
        }
        steps += 1;
        match code[ip] {
            b'+' => tape[ptr] = tape[ptr].wrapping_add(1),
            b'-' => tape[ptr] = tape[ptr].wrapping_sub(1),
            b'>' => {
                if ptr + 1 == tape.len() {
                    break RunOutcome::Halted { runtime: steps, output };
                }
                ptr += 1;
                touched = touched.max(ptr);
            }
            b'<' => {
                if ptr == 0 {
                    break RunOutcome::Halted { runtime: steps, output };
                }
                ptr -= 1;
            }
            b'[' => {
                if tape[ptr] == 0 {
                    ip = jumps[ip];
                }
            }
            b']' => {
                if tape[ptr] != 0 {
                    ip = jumps[ip];
                }
            }
            b'.' => output.push(tape[ptr]),
            _ => unreachable!("validated instruction set"),
        }
        ip += 1;
    };
    tape[..=touched].fill(0);
    outcome
}
