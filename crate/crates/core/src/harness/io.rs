//! JSON Lines persistence.
//!
//! Line 1 is a header object; every further line is one output record,
//! ascending by hex-encoded output bytes. Reals are written with 17
//! significant digits so that a load/save cycle is byte-identical.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{AggregateStore, FrontierPoint, OutputRecord, SweepParams, Totals};
use crate::machines::MachineKind;
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format_version: u32,
    machine: String,
    max_symbol_length: u32,
    max_steps: u64,
    width: usize,
    tag_start: String,
    totals: HeaderTotals,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HeaderTotals {
    enumerated: u64,
    halted_output: u64,
    halted_empty: u64,
    timeout: u64,
    invalid: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordLine {
    out: String,
    out_len: u64,
    frontier: Vec<(u64, f64)>,
    logw_m: f64,
    logw_s: f64,
    producers: u64,
    terms: Vec<(u32, u32, u64)>,
}

pub(crate) fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn record_line(rec: &OutputRecord) -> String {
    let mut s = String::with_capacity(128);
    write!(s, "{{\"out\":\"{}\",\"out_len\":{},\"frontier\":[", hex::encode(&rec.output), rec.output_length).unwrap();
    for (i, p) in rec.frontier.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "[{},{}]", p.runtime, fmt_real(p.bits)).unwrap();
    }
    write!(
        s,
        "],\"logw_m\":{},\"logw_s\":{},\"producers\":{},\"terms\":[",
        fmt_real(rec.log2_mass_m()),
        fmt_real(rec.log2_mass_s()),
        rec.producer_count
    )
    .unwrap();
    for (i, (len, j, n)) in rec.terms().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "[{len},{j},{n}]").unwrap();
    }
    s.push_str("]}");
    s
}

pub fn write_store<W: Write>(store: &AggregateStore, mut w: W) -> std::io::Result<()> {
    let t = &store.totals;
    let header = Header {
        format_version: FORMAT_VERSION,
        machine: store.params.machine.name().to_string(),
        max_symbol_length: store.params.max_symbol_length,
        max_steps: store.params.max_steps,
        width: store.params.width,
        tag_start: String::from_utf8_lossy(&store.params.tag_start).into_owned(),
        totals: HeaderTotals {
            enumerated: t.enumerated,
            halted_output: t.halted_output,
            halted_empty: t.halted_empty,
            timeout: t.timeout,
            invalid: t.invalid,
        },
    };
    serde_json::to_writer(&mut w, &header)?;
    w.write_all(b"\n")?;
    for rec in store.records.values() {
        w.write_all(record_line(rec).as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn save_store(store: &AggregateStore, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_store(store, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn load_store(path: impl AsRef<Path>) -> Result<AggregateStore> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_store(BufReader::new(file), path)
}

/// Parse a store; `origin` is only used in error messages.
pub fn read_store<R: BufRead>(reader: R, origin: impl AsRef<Path>) -> Result<AggregateStore> {
    let origin = origin.as_ref();
    let bad = |line: usize, msg: String| Error::Format {
        path: origin.to_path_buf(),
        line,
        msg,
    };
    let mut lines = reader.lines();
    let first = lines
        .next()
        .ok_or_else(|| bad(1, "missing header".into()))?
        .map_err(|e| Error::io(origin, e))?;
    let header: Header = serde_json::from_str(&first).map_err(|e| bad(1, e.to_string()))?;
    if header.format_version != FORMAT_VERSION {
        return Err(Error::Version {
            found: header.format_version,
            expected: FORMAT_VERSION,
        });
    }
    let machine: MachineKind = header.machine.parse().map_err(|e: Error| bad(1, e.to_string()))?;
    let ht = header.totals;
    let mut store = AggregateStore::empty(SweepParams {
        machine,
        max_symbol_length: header.max_symbol_length,
        max_steps: header.max_steps,
        width: header.width,
        tag_start: header.tag_start.into_bytes(),
    });
    store.totals = Totals {
        enumerated: ht.enumerated,
        halted_output: ht.halted_output,
        halted_empty: ht.halted_empty,
        timeout: ht.timeout,
        invalid: ht.invalid,
    };
    if !store.totals.is_conserved() {
        return Err(bad(1, "totals do not add up to the enumerated count".into()));
    }

    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.is_empty() {
            return Err(bad(lineno, "empty line".into()));
        }
        let raw: RecordLine = serde_json::from_str(&line).map_err(|e| bad(lineno, e.to_string()))?;
        let output = hex::decode(&raw.out).map_err(|e| bad(lineno, e.to_string()))?;
        let mut rec = OutputRecord::new(machine, output.clone(), raw.out_len);
        for &(len, j, n) in &raw.terms {
            rec.add_terms(len, j, n);
        }
        rec.frontier = raw.frontier.iter().map(|&(r, b)| FrontierPoint::new(r, b)).collect();
        rec.check_invariants().map_err(|m| bad(lineno, m))?;
        if rec.producer_count != raw.producers {
            return Err(bad(lineno, "producer count disagrees with terms".into()));
        }
        if rec.log2_mass_m().to_bits() != raw.logw_m.to_bits() || rec.log2_mass_s().to_bits() != raw.logw_s.to_bits()
        {
            return Err(bad(lineno, "masses disagree with terms".into()));
        }
        if let Some((last, _)) = store.records.last_key_value() {
            if *last >= output {
                return Err(bad(lineno, "records not in ascending output order".into()));
            }
        }
        store.records.insert(output, rec);
    }
    Ok(store)
}
