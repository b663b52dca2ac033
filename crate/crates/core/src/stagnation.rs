//! Prior-weighted stagnation curves: what is left to discover, as a
//! function of how long the frontier has been flat.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::harness::AggregateStore;
use crate::machines::MachineKind;
use crate::priors::{normalize, PriorKind, WeightTable};
use crate::profiles::{build_profile, evaluate_at_cutoff, EmpiricalProfile};
use crate::{Error, Result};

/// Profiles per parallel work item; fixed so that the floating-point
/// summation order never depends on the thread count.
const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct CurveConfig {
    /// Ratio of the geometric cutoff grid over `[1, max_steps]`.
    pub grid_ratio: f64,
    /// Stagnation bins are `[0, 1)`, `[1, b)`, `[b, b^2)`, ...
    pub bin_base: u64,
    pub windows: Vec<f64>,
}

impl Default for CurveConfig {
    fn default() -> Self {
        CurveConfig {
            grid_ratio: 1.1,
            bin_base: 2,
            windows: vec![2.0, 10.0, 100.0],
        }
    }
}

impl CurveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.grid_ratio > 1.0 && self.grid_ratio.is_finite()) {
            return Err(Error::Config(format!("grid ratio must exceed 1, got {}", self.grid_ratio)));
        }
        if self.bin_base < 2 {
            return Err(Error::Config("stagnation bin base must be at least 2".into()));
        }
        if self.windows.iter().any(|&w| !(w >= 1.0 && w.is_finite())) {
            return Err(Error::Config("window factors must be finite and >= 1".into()));
        }
        if self.windows.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("window factors must be strictly increasing".into()));
        }
        Ok(())
    }

    /// Bin holding a stagnation of `s` steps.
    pub fn bin_of(&self, s: u64) -> usize {
        let mut bin = 0;
        let mut edge = 1u64;
        while s >= edge {
            bin += 1;
            edge = match edge.checked_mul(self.bin_base) {
                Some(e) => e,
                None => return bin,
            };
        }
        bin
    }

    /// `[lo, hi)` of a bin; `hi` saturates at `u64::MAX`.
    pub fn bin_bounds(&self, bin: usize) -> (u64, u64) {
        if bin == 0 {
            return (0, 1);
        }
        let pow = |e: usize| {
            (0..e).try_fold(1u64, |acc, _| acc.checked_mul(self.bin_base)).unwrap_or(u64::MAX)
        };
        (pow(bin - 1), pow(bin))
    }
}

/// Rounded geometric sequence `1, r, r^2, ...` up to and including `max`.
pub fn geometric_grid(ratio: f64, max: u64) -> Vec<u64> {
    let mut grid = Vec::new();
    let mut x = 1.0f64;
    loop {
        let v = x.round() as u64;
        if v >= max {
            break;
        }
        if grid.last() != Some(&v) {
            grid.push(v);
        }
        x *= ratio;
    }
    grid.push(max.max(1));
    grid
}

/// One (prior, stagnation bin) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub prior: PriorKind,
    pub bin: usize,
    pub s_lo: u64,
    pub s_hi: u64,
    pub weight: f64,
    pub n_pairs: u64,
    pub mean_remaining_bits: Option<f64>,
    pub mean_final_offset: Option<f64>,
    pub mean_window_bits: Vec<Option<f64>>,
    /// Standard error of the weighted mean of `remaining_bits`, using the
    /// effective sample size `(Σw)^2 / Σw^2`.
    pub se_remaining_bits: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    pub machine: MachineKind,
    pub windows: Vec<f64>,
    /// Ordered by prior, then bin ascending.
    pub rows: Vec<CurveRow>,
}

impl CurveTable {
    pub fn rows_for(&self, prior: PriorKind) -> impl Iterator<Item = &CurveRow> + '_ {
        self.rows.iter().filter(move |r| r.prior == prior)
    }
}

#[derive(Debug, Clone, Default)]
struct Cell {
    n_pairs: u64,
    w: f64,
    w2: f64,
    rem: f64,
    rem2: f64,
    offset: f64,
    win: Vec<f64>,
}

impl Cell {
    fn add(&mut self, w: f64, rem: f64, offset: f64, win: &[f64]) {
        self.n_pairs += 1;
        self.w += w;
        self.w2 += w * w;
        self.rem += w * rem;
        self.rem2 += w * rem * rem;
        self.offset += w * offset;
        if self.win.len() < win.len() {
            self.win.resize(win.len(), 0.0);
        }
        for (acc, &x) in self.win.iter_mut().zip(win) {
            *acc += w * x;
        }
    }

    fn merge(&mut self, o: &Cell) {
        self.n_pairs += o.n_pairs;
        self.w += o.w;
        self.w2 += o.w2;
        self.rem += o.rem;
        self.rem2 += o.rem2;
        self.offset += o.offset;
        if self.win.len() < o.win.len() {
            self.win.resize(o.win.len(), 0.0);
        }
        for (a, b) in self.win.iter_mut().zip(&o.win) {
            *a += b;
        }
    }
}

/// cells[prior][bin]
type Grid = Vec<Vec<Cell>>;

fn merge_grid(mut a: Grid, b: Grid) -> Grid {
    for (pa, pb) in a.iter_mut().zip(b) {
        if pa.len() < pb.len() {
            pa.resize(pb.len(), Cell::default());
        }
        for (ca, cb) in pa.iter_mut().zip(&pb) {
            ca.merge(cb);
        }
    }
    a
}

fn accumulate_profile(
    grid: &mut Grid,
    profile: &EmpiricalProfile,
    cutoffs: &[u64],
    weights: &[f64],
    config: &CurveConfig,
) {
    let mut points: Vec<u64> = cutoffs.iter().copied().chain(profile.drops.iter().map(|d| d.runtime)).collect();
    points.sort_unstable();
    points.dedup();
    for r in points {
        let Some(view) = evaluate_at_cutoff(profile, r, &config.windows) else {
            continue;
        };
        let bin = config.bin_of(view.stagnation);
        for (cells, &w) in grid.iter_mut().zip(weights) {
            if cells.len() <= bin {
                cells.resize(bin + 1, Cell::default());
            }
            cells[bin].add(w, view.remaining_bits, view.final_offset as f64, &view.window_bits);
        }
    }
}

/// Curves over the geometric cutoff grid up to the store's step limit,
/// with every profile's own drop runtimes added to the grid.
pub fn accumulate_curves(store: &AggregateStore, weights: &[WeightTable], config: &CurveConfig) -> Result<CurveTable> {
    config.validate()?;
    let grid = geometric_grid(config.grid_ratio, store.params.max_steps);
    accumulate_curves_on_grid(store, weights, config, &grid)
}

/// Normalize each prior over the store and accumulate its curves.
pub fn analyze(store: &AggregateStore, priors: &[PriorKind], config: &CurveConfig) -> Result<CurveTable> {
    let weights = priors.iter().map(|&p| normalize(p, store)).collect::<Result<Vec<_>>>()?;
    accumulate_curves(store, &weights, config)
}

/// As [`accumulate_curves`] with an explicit base grid of cutoffs.
pub fn accumulate_curves_on_grid(
    store: &AggregateStore,
    weights: &[WeightTable],
    config: &CurveConfig,
    cutoffs: &[u64],
) -> Result<CurveTable> {
    config.validate()?;
    if cutoffs.contains(&0) {
        return Err(Error::Config("cutoffs must be positive".into()));
    }
    let records: Vec<_> = store.records.values().collect();
    let grids: Vec<Grid> = records
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut g: Grid = vec![Vec::new(); weights.len()];
            let mut w = vec![0.0; weights.len()];
            for rec in chunk {
                for (slot, table) in w.iter_mut().zip(weights) {
                    *slot = table.get(&rec.output);
                }
                accumulate_profile(&mut g, &build_profile(rec), cutoffs, &w, config);
            }
            g
        })
        .collect();
    let total = grids.into_iter().fold(vec![Vec::new(); weights.len()], merge_grid);

    let mut rows = Vec::new();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by_key(|&i| weights[i].prior);
    for i in order {
        for (bin, cell) in total[i].iter().enumerate() {
            if cell.n_pairs == 0 {
                continue;
            }
            rows.push(finish_row(weights[i].prior, bin, cell, config));
        }
    }
    Ok(CurveTable {
        machine: store.machine(),
        windows: config.windows.clone(),
        rows,
    })
}

fn finish_row(prior: PriorKind, bin: usize, cell: &Cell, config: &CurveConfig) -> CurveRow {
    let (s_lo, s_hi) = config.bin_bounds(bin);
    let mean = |x: f64| (cell.w > 0.0).then(|| x / cell.w);
    let mean_remaining_bits = mean(cell.rem);
    let se_remaining_bits = mean_remaining_bits.filter(|_| cell.n_pairs >= 2).map(|mu| {
        let var = (cell.rem2 / cell.w - mu * mu).max(0.0);
        let n_eff = cell.w * cell.w / cell.w2;
        (var / n_eff).sqrt()
    });
    CurveRow {
        prior,
        bin,
        s_lo,
        s_hi,
        weight: cell.w,
        n_pairs: cell.n_pairs,
        mean_remaining_bits,
        mean_final_offset: mean(cell.offset),
        mean_window_bits: (0..config.windows.len())
            .map(|k| mean(cell.win.get(k).copied().unwrap_or(0.0)))
            .collect(),
        se_remaining_bits,
    }
}

fn window_label(w: f64) -> String {
    if w.fract() == 0.0 {
        format!("mean_window_bits_w{}", w as u64)
    } else {
        format!("mean_window_bits_w{w}")
    }
}

fn header(windows: &[f64]) -> Vec<String> {
    let mut h: Vec<String> = ["machine", "prior", "s_lo", "s_hi", "weight", "n_pairs", "mean_remaining_bits", "mean_final_offset_steps"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    h.extend(windows.iter().map(|&w| window_label(w)));
    h.push("se_remaining_bits".into());
    h
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v}")).unwrap_or_default()
}

pub fn write_curves<W: Write>(table: &CurveTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(&table.windows))?;
    for r in &table.rows {
        let mut rec = vec![
            table.machine.name().to_string(),
            r.prior.name().to_string(),
            r.s_lo.to_string(),
            r.s_hi.to_string(),
            format!("{}", r.weight),
            r.n_pairs.to_string(),
            opt(r.mean_remaining_bits),
            opt(r.mean_final_offset),
        ];
        rec.extend(r.mean_window_bits.iter().map(|&x| opt(x)));
        rec.push(opt(r.se_remaining_bits));
        w.write_record(rec)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn export_curves(table: &CurveTable, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_curves(table, &mut buf)?;
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

/// Parse a curve CSV back. A file with only a header yields an empty table
/// for `fallback_machine`.
pub fn read_curves<R: Read>(input: R, fallback_machine: MachineKind) -> Result<CurveTable> {
    let mut rd = csv::Reader::from_reader(input);
    let head = rd.headers()?.clone();
    let n = head.len();
    let bad = |line: usize, msg: String| Error::Format {
        path: "<curves>".into(),
        line,
        msg,
    };
    if n < 9 || &head[n - 1] != "se_remaining_bits" {
        return Err(bad(1, "unexpected curve header".into()));
    }
    let mut windows = Vec::new();
    for name in head.iter().skip(8).take(n - 9) {
        let w = name
            .strip_prefix("mean_window_bits_w")
            .and_then(|s| s.parse::<f64>().ok())
            .ok_or_else(|| bad(1, format!("bad window column `{name}`")))?;
        windows.push(w);
    }
    let expected = header(&windows);
    if head.iter().ne(expected.iter().map(String::as_str)) {
        return Err(bad(1, "unexpected curve header".into()));
    }
    let config = CurveConfig {
        windows: windows.clone(),
        ..CurveConfig::default()
    };
    let mut machine = None;
    let mut rows = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let num = |k: usize| -> Result<f64> { rec[k].parse::<f64>().map_err(|e| bad(line, format!("{}: {e}", &head[k]))) };
        let int = |k: usize| -> Result<u64> { rec[k].parse::<u64>().map_err(|e| bad(line, format!("{}: {e}", &head[k]))) };
        let onum = |k: usize| -> Result<Option<f64>> { if rec[k].is_empty() { Ok(None) } else { num(k).map(Some) } };
        let m: MachineKind = rec[0].parse()?;
        if *machine.get_or_insert(m) != m {
            return Err(bad(line, "mixed machines in one curve file".into()));
        }
        let s_lo = int(2)?;
        let bin = config.bin_of(s_lo);
        rows.push(CurveRow {
            prior: rec[1].parse()?,
            bin,
            s_lo,
            s_hi: int(3)?,
            weight: num(4)?,
            n_pairs: int(5)?,
            mean_remaining_bits: onum(6)?,
            mean_final_offset: onum(7)?,
            mean_window_bits: (0..windows.len()).map(|k| onum(8 + k)).collect::<Result<_>>()?,
            se_remaining_bits: onum(n - 1)?,
        });
    }
    Ok(CurveTable {
        machine: machine.unwrap_or(fallback_machine),
        windows,
        rows,
    })
}

/// How remaining progress behaves across the populated bins of one prior.
#[derive(Debug, Clone, PartialEq)]
pub struct DecaySummary {
    pub prior: PriorKind,
    pub first_bin: usize,
    pub last_bin: usize,
    pub first_mean: f64,
    pub last_mean: f64,
    /// Weighted Spearman correlation between bin index and mean remaining bits.
    pub spearman: f64,
}

impl DecaySummary {
    pub fn decays(&self) -> bool {
        self.first_mean > self.last_mean && self.spearman < 0.0
    }
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

/// Pearson correlation of the ranks of `x` and `y`, weighted by `w`.
pub fn weighted_spearman(x: &[f64], y: &[f64], w: &[f64]) -> f64 {
    let (rx, ry) = (ranks(x), ranks(y));
    let sw: f64 = w.iter().sum();
    let mx = rx.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let my = ry.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..x.len() {
        let (dx, dy) = (rx[i] - mx, ry[i] - my);
        sxy += w[i] * dx * dy;
        sxx += w[i] * dx * dx;
        syy += w[i] * dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    sxy / (sxx * syy).sqrt()
}

/// `None` when fewer than two bins carry a mean for this prior.
pub fn decay_summary(table: &CurveTable, prior: PriorKind) -> Option<DecaySummary> {
    let rows: Vec<&CurveRow> = table
        .rows_for(prior)
        .filter(|r| r.mean_remaining_bits.is_some())
        .collect();
    if rows.len() < 2 {
        return None;
    }
    let x: Vec<f64> = rows.iter().map(|r| r.bin as f64).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.mean_remaining_bits.unwrap()).collect();
    let w: Vec<f64> = rows.iter().map(|r| r.weight).collect();
    Some(DecaySummary {
        prior,
        first_bin: rows[0].bin,
        last_bin: rows[rows.len() - 1].bin,
        first_mean: y[0],
        last_mean: y[y.len() - 1],
        spearman: weighted_spearman(&x, &y, &w),
    })
}

/// Plain-text rendering of a table for terminals.
pub fn render_table(table: &CurveTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<12} {:>10} {:>12} {:>10} {:>10} {:>12}", "prior", "s_lo", "weight", "pairs", "remaining", "se");
    for r in &table.rows {
        let f = |x: Option<f64>| x.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:<12} {:>10} {:>12.4e} {:>10} {:>10} {:>12}",
            r.prior.name(),
            r.s_lo,
            r.weight,
            r.n_pairs,
            f(r.mean_remaining_bits),
            f(r.se_remaining_bits)
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_sweep, OutputRecord, SweepConfig};
    use crate::machines::MachineConfig;

    fn one_profile_store(points: &[(u32, u64)]) -> AggregateStore {
        let mut store =
            AggregateStore::empty(SweepConfig::new(MachineKind::Rule110, 8, MachineConfig::default()).params());
        let mut rec = OutputRecord::new(MachineKind::Rule110, vec![7], 64);
        for &(len, rt) in points {
            rec.add_producer(len, rt);
        }
        store.records.insert(vec![7], rec);
        store
    }

    fn all_weights(store: &AggregateStore) -> Vec<WeightTable> {
        PriorKind::ALL.iter().map(|&p| normalize(p, store).unwrap()).collect()
    }

    #[test]
    fn bins() {
        let c = CurveConfig::default();
        assert_eq!(c.bin_of(0), 0);
        assert_eq!(c.bin_of(1), 1);
        assert_eq!(c.bin_of(2), 2);
        assert_eq!(c.bin_of(3), 2);
        assert_eq!(c.bin_of(45), 6);
        assert_eq!(c.bin_bounds(6), (32, 64));
        assert_eq!(c.bin_bounds(0), (0, 1));
        for s in [0u64, 1, 5, 1000, u64::MAX] {
            let (lo, hi) = c.bin_bounds(c.bin_of(s));
            assert!(lo <= s && (s < hi || hi == u64::MAX));
        }
    }

    #[test]
    fn grid_is_increasing_and_ends_at_max() {
        let g = geometric_grid(1.1, 10_000);
        assert_eq!(g[0], 1);
        assert_eq!(*g.last().unwrap(), 10_000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(geometric_grid(2.0, 1), vec![1]);
    }

    #[test]
    fn hand_evaluated_cutoffs() {
        // bits 10 and 7 with one bit per symbol
        let store = one_profile_store(&[(10, 5), (7, 100)]);
        let w = vec![normalize(PriorKind::Length, &store).unwrap()];
        let t = accumulate_curves_on_grid(&store, &w, &CurveConfig::default(), &[5, 50, 100]).unwrap();
        assert_eq!(t.rows.len(), 2);
        let b0 = &t.rows[0];
        assert_eq!((b0.bin, b0.n_pairs, b0.weight), (0, 2, 2.0));
        assert_eq!(b0.mean_remaining_bits, Some(1.5));
        let b6 = &t.rows[1];
        assert_eq!((b6.bin, b6.s_lo, b6.n_pairs), (6, 32, 1));
        assert_eq!(b6.mean_remaining_bits, Some(3.0));
        assert_eq!(b6.mean_final_offset, Some(95.0));
        assert_eq!(b6.se_remaining_bits, None);
        // the cutoff at 50 reaches 100 with a window factor of 2
        assert_eq!(b6.mean_window_bits, vec![Some(3.0), Some(3.0), Some(3.0)]);
    }

    #[test]
    fn one_output_same_curves_for_every_prior() {
        let store = one_profile_store(&[(10, 5), (7, 100), (3, 900)]);
        let t = accumulate_curves(&store, &all_weights(&store), &CurveConfig::default()).unwrap();
        let rows: Vec<Vec<&CurveRow>> = PriorKind::ALL.iter().map(|&p| t.rows_for(p).collect()).collect();
        for r in 1..3 {
            assert_eq!(rows[0].len(), rows[r].len());
            for (a, b) in rows[0].iter().zip(&rows[r]) {
                assert_eq!(a.mean_remaining_bits, b.mean_remaining_bits);
                assert_eq!(a.weight, b.weight);
            }
        }
    }

    #[test]
    fn single_point_profiles_have_nothing_left() {
        let store = run_sweep(&SweepConfig::new(MachineKind::Brainfuck, 1, MachineConfig::default())).unwrap();
        let t = accumulate_curves(&store, &all_weights(&store), &CurveConfig::default()).unwrap();
        assert!(!t.rows.is_empty());
        for r in &t.rows {
            assert_eq!(r.mean_remaining_bits, Some(0.0));
        }
    }

    fn small_store() -> AggregateStore {
        run_sweep(&SweepConfig::new(
            MachineKind::Brainfuck,
            5,
            MachineConfig {
                max_steps: 300,
                ..MachineConfig::default()
            },
        ))
        .unwrap()
    }

    #[test]
    fn partition_matches_direct_mean() {
        let store = small_store();
        let weights = all_weights(&store);
        let config = CurveConfig::default();
        let t = accumulate_curves(&store, &weights, &config).unwrap();
        let grid = geometric_grid(config.grid_ratio, store.params.max_steps);
        for table in &weights {
            // direct grid-wide weighted mean, no binning
            let (mut sw, mut sx, mut n) = (0.0, 0.0, 0u64);
            for rec in store.records.values() {
                let p = build_profile(rec);
                let mut pts: Vec<u64> = grid.iter().copied().chain(p.drops.iter().map(|d| d.runtime)).collect();
                pts.sort_unstable();
                pts.dedup();
                for r in pts {
                    if let Some(v) = evaluate_at_cutoff(&p, r, &[]) {
                        let w = table.get(&rec.output);
                        sw += w;
                        sx += w * v.remaining_bits;
                        n += 1;
                    }
                }
            }
            let rows: Vec<_> = t.rows_for(table.prior).collect();
            let bw: f64 = rows.iter().map(|r| r.weight).sum();
            let bx: f64 = rows.iter().map(|r| r.weight * r.mean_remaining_bits.unwrap_or(0.0)).sum();
            assert_eq!(rows.iter().map(|r| r.n_pairs).sum::<u64>(), n);
            assert!((bw - sw).abs() < 1e-9 * sw.max(1.0));
            assert!((bx / bw - sx / sw).abs() < 1e-9);
        }
    }

    #[test]
    fn export_round_trip_and_threads() {
        let store = small_store();
        let weights = all_weights(&store);
        let t = accumulate_curves(&store, &weights, &CurveConfig::default()).unwrap();
        let mut buf = Vec::new();
        write_curves(&t, &mut buf).unwrap();
        let back = read_curves(buf.as_slice(), MachineKind::Rule110).unwrap();
        assert_eq!(back, t);
        let lines = buf.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count();
        let bins = t.rows_for(PriorKind::Length).count();
        assert_eq!(lines, 1 + 3 * bins);

        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let t1 = pool.install(|| accumulate_curves(&store, &weights, &CurveConfig::default()).unwrap());
        let mut buf1 = Vec::new();
        write_curves(&t1, &mut buf1).unwrap();
        assert_eq!(buf, buf1);
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = CurveTable {
            machine: MachineKind::Tag2,
            windows: vec![2.0, 10.0, 100.0],
            rows: vec![],
        };
        let mut buf = Vec::new();
        write_curves(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "machine,prior,s_lo,s_hi,weight,n_pairs,mean_remaining_bits,mean_final_offset_steps,\
             mean_window_bits_w2,mean_window_bits_w10,mean_window_bits_w100,se_remaining_bits\n"
        );
        assert_eq!(read_curves(buf.as_slice(), MachineKind::Tag2).unwrap(), t);
    }

    #[test]
    fn spearman() {
        let x = [0.0, 1.0, 2.0, 3.0];
        assert!((weighted_spearman(&x, &[4.0, 3.0, 2.0, 1.0], &[1.0; 4]) + 1.0).abs() < 1e-12);
        assert!((weighted_spearman(&x, &[1.0, 2.0, 3.0, 9.0], &[1.0, 5.0, 1.0, 2.0]) - 1.0).abs() < 1e-12);
        assert_eq!(weighted_spearman(&x, &[1.0; 4], &[1.0; 4]), 0.0);
        assert_eq!(ranks(&[3.0, 1.0, 3.0]), vec![2.5, 1.0, 2.5]);
    }

    #[test]
    fn small_sweep_decays() {
        let store = small_store();
        let t = accumulate_curves(&store, &all_weights(&store), &CurveConfig::default()).unwrap();
        for prior in [PriorKind::Length, PriorKind::Algorithmic] {
            let d = decay_summary(&t, prior).unwrap();
            assert!(d.first_mean >= d.last_mean, "{d:?}");
        }
    }
}
