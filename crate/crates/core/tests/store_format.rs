use std::io::Cursor;

use compfront::harness::{read_store, write_store, FORMAT_VERSION};
use compfront::{run_sweep, Error, MachineConfig, MachineKind, SweepConfig};

fn small_store() -> compfront::harness::AggregateStore {
    run_sweep(&SweepConfig::new(
        MachineKind::Brainfuck,
        3,
        MachineConfig {
            max_steps: 200,
            ..MachineConfig::default()
        },
    ))
    .unwrap()
}

fn bytes(store: &compfront::harness::AggregateStore) -> Vec<u8> {
    let mut out = Vec::new();
    write_store(store, &mut out).unwrap();
    out
}

#[test]
fn header_then_one_sorted_line_per_output() {
    let store = small_store();
    let text = String::from_utf8(bytes(&store)).unwrap();
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["format_version"], FORMAT_VERSION);
    assert_eq!(header["machine"], "bf");
    let keys: Vec<String> = lines
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["out"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(keys.len(), store.len());
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn round_trip_is_byte_identical() {
    let store = small_store();
    let first = bytes(&store);
    let back = read_store(Cursor::new(&first), "mem").unwrap();
    assert_eq!(bytes(&back), first);
}

#[test]
fn malformed_lines_name_file_and_line() {
    let mut text = String::from_utf8(bytes(&small_store())).unwrap();
    text.push_str("{\"out\": 3}\n");
    let line = text.lines().count();
    match read_store(Cursor::new(text), "broken.jsonl") {
        Err(Error::Format { line: l, .. }) => assert_eq!(l, line),
        other => panic!("expected a format error, got {other:?}"),
    }
}

#[test]
fn unknown_version_is_rejected() {
    let text = String::from_utf8(bytes(&small_store())).unwrap();
    let bumped = text.replacen(
        &format!("\"format_version\":{FORMAT_VERSION}"),
        &format!("\"format_version\":{}", FORMAT_VERSION + 1),
        1,
    );
    assert!(read_store(Cursor::new(bumped), "v.jsonl").is_err());
}
