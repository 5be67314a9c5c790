//! Built-in fixtures K1..K6 and the golden normal-subgyrogroup lists.
//!
//! K1's table and both golden normal lists are compiled in and guarded
//! by SHA-256 checksums, so silent edits to the data files fail loudly.
//! Every other fixture is produced by iterated doubling with the
//! canonical pairing, never stored: a construction bug cannot hide in
//! shared data. The doubled tables' own golden copies live only in the
//! repository data directory for external comparison.

use crate::doubling::double;
use crate::format::parse_table;
use crate::gyrogroup::FiniteGyrogroup;
use crate::subset::ElementSubset;
use sha2::{Digest, Sha256};
use thiserror::Error;

const K1_TABLE_TEXT: &str = include_str!("../../../data/k1.gyro");
const K1_TABLE_SHA256: &str = "be2b38ea244a3d6683dd068a57e9ef408e7ca3d23c606dfdff9d48d78d3a6a54";
const K1_NORMALS_TEXT: &str = include_str!("../../../data/k1.normals.txt");
const K1_NORMALS_SHA256: &str = "611f158befec8d0e76dc5e1621a310161a750356ac28c022bf41d5bee45fec54";
const K2_NORMALS_TEXT: &str = include_str!("../../../data/k2.normals.txt");
const K2_NORMALS_SHA256: &str = "9a5620895d1dd17ff1f3f5d3d1e46e9c0d7e22fc59c6acaf4f2cdd3cf06e5d9f";

/// Largest supported fixture index; K6 has order 256.
pub const FIXTURE_CAP: usize = 6;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown fixture '{name}' (expected K1..K{FIXTURE_CAP})")]
    UnknownFixture { name: String },
    #[error("fixture '{name}' exceeds the cap K{cap}")]
    CapExceeded { name: String, cap: usize },
    #[error("no golden normal data for '{name}' (available: K1, K2)")]
    NoGoldenData { name: String },
}

/// Where a fixture's table came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    EmbeddedTable,
    IteratedDoubling { doublings: usize },
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::EmbeddedTable => write!(f, "embedded table"),
            Provenance::IteratedDoubling { doublings } => {
                write!(f, "iterated doubling ({doublings}x)")
            }
        }
    }
}

/// A named, validated gyrogroup from the built-in family.
#[derive(Clone, Debug)]
pub struct Fixture {
    name: String,
    gyrogroup: FiniteGyrogroup,
    provenance: Provenance,
}

impl Fixture {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gyrogroup(&self) -> &FiniteGyrogroup {
        &self.gyrogroup
    }

    pub fn into_gyrogroup(self) -> FiniteGyrogroup {
        self.gyrogroup
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// Reference data: the known-normal subsets of a fixture and,
/// per subset, whether its induced gyrogroup is nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenNormals {
    pub fixture: String,
    pub sets: Vec<ElementSubset>,
    pub nondegenerate: Vec<bool>,
}

fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn checked(text: &'static str, expected: &str, what: &str) -> &'static str {
    let actual = sha256_hex(text);
    assert_eq!(actual, expected, "embedded {what} data failed its checksum");
    text
}

/// Fixture index for names of the form K<positive integer>.
fn parse_name(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('K')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// K1 from the embedded table; K(n) by doubling K(n-1) with the
/// canonical pairing. Every step is re-validated.
pub fn fixture(name: &str) -> Result<Fixture, CatalogError> {
    let index = parse_name(name).ok_or_else(|| CatalogError::UnknownFixture {
        name: name.to_string(),
    })?;
    if index > FIXTURE_CAP {
        return Err(CatalogError::CapExceeded {
            name: name.to_string(),
            cap: FIXTURE_CAP,
        });
    }
    let doc = parse_table(checked(K1_TABLE_TEXT, K1_TABLE_SHA256, "K1 table"))
        .expect("embedded K1 table parses");
    let mut g = FiniteGyrogroup::construct(doc.table, doc.labels)
        .expect("embedded K1 table satisfies the axioms");
    for _ in 1..index {
        g = double(&g, None)
            .expect("doubling a valid gyrogroup yields a valid gyrogroup")
            .whole()
            .clone();
    }
    let provenance = if index == 1 {
        Provenance::EmbeddedTable
    } else {
        Provenance::IteratedDoubling {
            doublings: index - 1,
        }
    };
    Ok(Fixture {
        name: format!("K{index}"),
        gyrogroup: g,
        provenance,
    })
}

/// Parses one `{a,b,c}` line with an optional trailing `*`.
fn parse_golden_line(line: &str, universe: usize) -> (ElementSubset, bool) {
    let line = line.trim();
    let (body, star) = match line.strip_suffix('*') {
        Some(rest) => (rest, true),
        None => (line, false),
    };
    let inner = body
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .expect("golden line is brace-delimited");
    let elems = inner.split(',').map(|t| {
        t.trim()
            .parse::<usize>()
            .expect("golden entries are integers")
    });
    (ElementSubset::from_elements(universe, elems), star)
}

/// The embedded reference lists; only K1 and K2 have any.
pub fn golden_normals(name: &str) -> Result<GoldenNormals, CatalogError> {
    let index = parse_name(name).ok_or_else(|| CatalogError::UnknownFixture {
        name: name.to_string(),
    })?;
    let (text, universe) = match index {
        1 => (checked(K1_NORMALS_TEXT, K1_NORMALS_SHA256, "K1 normals"), 8),
        2 => (
            checked(K2_NORMALS_TEXT, K2_NORMALS_SHA256, "K2 normals"),
            16,
        ),
        _ => {
            return Err(CatalogError::NoGoldenData {
                name: name.to_string(),
            })
        }
    };
    let mut sets = Vec::new();
    let mut nondegenerate = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (set, star) = parse_golden_line(line, universe);
        sets.push(set);
        nondegenerate.push(star);
    }
    Ok(GoldenNormals {
        fixture: format!("K{index}"),
        sets,
        nondegenerate,
    })
}
