// Map a log-size profile to a runtime profile with a Busy Beaver stand-in.

use compfront::theory::{check_busy_beaver, transform_p_to_d, DefaultBusyBeaver, LogBusyBeaver};

pub fn run_example() -> compfront::Result<()> {
    let bb = DefaultBusyBeaver;
    check_busy_beaver(&bb, 0, 10)?;
    let boundary = [(0, 40.0), (3, 30.0), (4, 12.0), (9, 2.0)];
    let mapped = transform_p_to_d(&boundary, &bb)?;
    for ((i, j), (log_rt, bits)) in boundary.iter().zip(&mapped) {
        println!("(i={i}, j={j:>4}) -> log2 runtime {log_rt:>6}, {bits:>4} bits");
    }

    // a faster-growing stand-in pushes the same boundary to later runtimes
    let tower = |m: i64| 3f64.powi(m as i32);
    check_busy_beaver(&tower, 0, 10)?;
    for ((i, _), (log_rt, _)) in boundary.iter().zip(transform_p_to_d(&boundary, &tower)?) {
        println!("log2 BB({i}): default {}, 3^m {} -> log2 runtime {log_rt}", bb.log2_bb(*i), tower.log2_bb(*i));
    }

    if let Err(e) = transform_p_to_d(&[(1, 10.0), (2, 9.5)], &bb) {
        println!("rejected: {e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> compfront::Result<()> {
    run_example()
}
