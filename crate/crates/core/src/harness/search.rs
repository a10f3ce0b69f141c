//! Resumable search for cube-like graphs of a given chromatic number.
//!
//! Symmetric sets of `(Z/2)^m` are visited in increasing mask order, keeping
//! only masks that are least in their orbit under coordinate permutations.
//! Every visited mask is appended to an NDJSON ledger; a trailing cursor
//! record marks where the next run starts. The ledger alone determines the
//! cursor, so a missing cursor (after an interrupt) is rebuilt on replay.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::enumerate::BinaryCube;
use super::{Report, Verdict};
use crate::cayley::{CayleyGraph, Scope};
use crate::chromatic::{
    chromatic_number_within, decide_k_colorable, k_colorable, ChiOutcome, Decision,
};
use crate::error::{Error, Result};
use crate::exec::Exec;

pub const SEARCH_MAX_M: u32 = 6;

/// Canonical masks solved per parallel batch; the ledger is flushed after each.
const BATCH: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChiEntry {
    Exact(usize),
    Unknown(UnknownTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnknownTag {
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LedgerRecord {
    pub sig: String,
    pub m: u32,
    pub chi: ChiEntry,
    /// Per-subset budget in force when the entry was written; `null` when
    /// unbounded.
    pub budget_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CursorRecord {
    cursor: String,
    m: u32,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Line {
    Record(LedgerRecord),
    Cursor(CursorRecord),
}

fn hex(mask: u64) -> String {
    format!("{mask:#x}")
}

fn parse_hex(s: &str) -> Option<u64> {
    u64::from_str_radix(s.strip_prefix("0x")?, 16).ok()
}

/// State recovered from a ledger file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerState {
    pub m: u32,
    pub records: Vec<(u64, ChiEntry)>,
    /// Next mask to examine.
    pub cursor: u64,
    /// Whether the file ended with a cursor record.
    pub has_cursor: bool,
    /// Byte length of the file without its cursor record.
    body_len: u64,
}

/// Reads and validates a ledger. Any malformed line, duplicate or
/// out-of-order signature, non-canonical signature, mixed `m`, misplaced
/// cursor, or cursor disagreeing with the records is an error.
pub fn replay(path: &Path, m: u32) -> Result<LedgerState> {
    let cube = BinaryCube::new(m);
    let mut state = LedgerState {
        m,
        records: Vec::new(),
        cursor: 0,
        has_cursor: false,
        body_len: 0,
    };
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(state),
        Err(e) => return Err(e.into()),
    };
    let corrupt =
        |n: usize, why: String| Error::Ledger(format!("{}:{}: {why}", path.display(), n + 1));
    let mut offset = 0u64;
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let len = line.len() as u64 + 1;
        if state.has_cursor {
            return Err(corrupt(n, "record after the cursor".into()));
        }
        let parsed: Line = serde_json::from_str(&line)
            .map_err(|e| corrupt(n, format!("unreadable record: {e}")))?;
        match parsed {
            Line::Record(r) => {
                if r.m != m {
                    return Err(corrupt(n, format!("record for m = {}, expected {m}", r.m)));
                }
                let sig = parse_hex(&r.sig)
                    .ok_or_else(|| corrupt(n, format!("bad signature {:?}", r.sig)))?;
                if u128::from(sig) >= cube.subset_count() || !cube.is_canonical(sig) {
                    return Err(corrupt(
                        n,
                        format!("{} is not a canonical signature", r.sig),
                    ));
                }
                if let Some(&(last, _)) = state.records.last() {
                    if sig <= last {
                        return Err(corrupt(
                            n,
                            format!("signature {} repeats or goes backwards", r.sig),
                        ));
                    }
                }
                if let ChiEntry::Exact(0) = r.chi {
                    return Err(corrupt(n, "chromatic number 0".into()));
                }
                state.records.push((sig, r.chi));
                state.body_len = offset + len;
            }
            Line::Cursor(c) => {
                if c.m != m {
                    return Err(corrupt(n, format!("cursor for m = {}, expected {m}", c.m)));
                }
                let cur = parse_hex(&c.cursor)
                    .ok_or_else(|| corrupt(n, format!("bad cursor {:?}", c.cursor)))?;
                if cur != next_after(&state.records) {
                    return Err(corrupt(
                        n,
                        format!("cursor {} does not match the records", c.cursor),
                    ));
                }
                state.has_cursor = true;
            }
        }
        offset += len;
    }
    state.cursor = next_after(&state.records);
    Ok(state)
}

fn next_after(records: &[(u64, ChiEntry)]) -> u64 {
    records.last().map_or(0, |&(sig, _)| sig + 1)
}

#[derive(Clone, Debug)]
pub struct SearchParams {
    pub m: u32,
    pub target_chi: usize,
    /// Per-subset solver budget; `None` solves exactly.
    pub budget: Option<Duration>,
    /// Stop after this many canonical subsets in this run.
    pub max_subsets: Option<u64>,
}

fn solve(
    cube: &BinaryCube,
    g: &crate::FgAbelianGroup,
    mask: u64,
    budget: Option<Duration>,
) -> Result<ChiEntry> {
    let s = cube.set(g, mask)?;
    let x0 = CayleyGraph::build(g, &s, Scope::GeneratedSubgroup)?;
    Ok(match chromatic_number_within(x0.graph(), budget) {
        ChiOutcome::Exact { chi, .. } => ChiEntry::Exact(chi),
        ChiOutcome::Unknown { .. } => ChiEntry::Unknown(UnknownTag::Unknown),
    })
}

/// Fresh unbudgeted check that `χ` of the identity component is `target`.
fn reverify(
    cube: &BinaryCube,
    g: &crate::FgAbelianGroup,
    mask: u64,
    target: usize,
) -> Result<bool> {
    let s = cube.set(g, mask)?;
    let x0 = CayleyGraph::build(g, &s, Scope::GeneratedSubgroup)?;
    let below = target == 0
        || matches!(
            decide_k_colorable(x0.graph(), target - 1, None),
            Decision::NotColorable
        );
    Ok(below && k_colorable(x0.graph(), target).is_some())
}

/// Continues the search recorded in `ledger`, appending one record per
/// canonical subset and a final cursor.
pub fn search_binary(p: &SearchParams, ledger: &Path, exec: Exec) -> Result<Report> {
    if !(1..=SEARCH_MAX_M).contains(&p.m) {
        return Err(Error::Precondition(format!(
            "m must be in 1..={SEARCH_MAX_M}, got {}",
            p.m
        )));
    }
    let state = replay(ledger, p.m)?;
    let cube = BinaryCube::new(p.m);
    let g = cube.group();
    let end = cube.subset_count();
    let budget_ms = p.budget.map(|d| d.as_millis() as u64);

    // Drop the old cursor; everything before it is kept byte for byte.
    let mut file = OpenOptions::new().create(true).append(true).open(ledger)?;
    if state.has_cursor {
        file.set_len(state.body_len)?;
    }

    let mut verdict = Verdict::default();
    let mut hist: BTreeMap<String, u64> = BTreeMap::new();
    let mut hits = Vec::new();
    let mut covered: u128 = 0;
    let mut next = state.cursor;
    let mut cursor = state.cursor;
    let mut processed = 0u64;
    let limit = p.max_subsets.unwrap_or(u64::MAX);
    while u128::from(next) < end && processed < limit {
        let room = (limit - processed).min(BATCH as u64) as usize;
        let mut batch = Vec::with_capacity(room);
        while batch.len() < room && u128::from(next) < end {
            if cube.is_canonical(next) {
                batch.push(next);
            }
            next += 1;
        }
        let solved = exec.map(&batch, |&mask| solve(&cube, &g, mask, p.budget));
        let mut out = String::new();
        for (&mask, chi) in batch.iter().zip(solved) {
            let chi = chi?;
            let rec = LedgerRecord {
                sig: hex(mask),
                m: p.m,
                chi,
                budget_ms,
            };
            out.push_str(&serde_json::to_string(&rec)?);
            out.push('\n');
            verdict.checked += 1;
            covered += u128::from(cube.orbit_size(mask));
            match chi {
                ChiEntry::Exact(c) => {
                    *hist.entry(c.to_string()).or_insert(0) += 1;
                    if c == p.target_chi {
                        let ok = reverify(&cube, &g, mask, p.target_chi)?;
                        if ok {
                            hits.push(hex(mask));
                        } else {
                            verdict.violation(format!(
                                "{}: chi {c} not confirmed by a fresh solve",
                                hex(mask)
                            ));
                        }
                    }
                }
                ChiEntry::Unknown(_) => {
                    *hist.entry("unknown".into()).or_insert(0) += 1;
                    verdict.unknown += 1;
                }
            }
        }
        file.write_all(out.as_bytes())?;
        file.flush()?;
        processed += batch.len() as u64;
        // The cursor follows the last record, not the last mask scanned.
        if let Some(&last) = batch.last() {
            cursor = last + 1;
        }
    }
    let complete = u128::from(next) >= end;
    let cursor_line = serde_json::to_string(&CursorRecord {
        cursor: hex(cursor),
        m: p.m,
    })?;
    writeln!(file, "{cursor_line}")?;
    file.sync_all()?;

    let after = replay(ledger, p.m)?;
    let total_covered: u128 = after
        .records
        .iter()
        .map(|&(s, _)| u128::from(cube.orbit_size(s)))
        .sum();

    let mut r = Report::new("search");
    r.claim("search.m", p.m);
    r.claim("search.target_chi", p.target_chi);
    r.claim("search.budget_ms", budget_ms);
    r.claim("search.start", hex(state.cursor));
    r.claim("search.cursor", hex(cursor));
    r.claim("search.processed", processed);
    r.claim("search.covered", covered.to_string());
    r.claim("search.chi_histogram", hist);
    r.claim("search.hits", hits);
    r.claim("search.ledger_records", after.records.len());
    r.claim("search.ledger_covered", total_covered.to_string());
    r.claim("search.subset_count", end.to_string());
    r.claim("search.complete", complete);
    Ok(r.conclude(verdict))
}
