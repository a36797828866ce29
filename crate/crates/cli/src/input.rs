//! Input loading: bundled presets, JSON files, or standard input, plus the
//! word/matrix parsing shared by the subcommands.

use std::io::Read;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use solenoid_core::selfsimilar::{AutomatonSpec, MealyAutomaton};
use solenoid_core::sft::EventuallyPeriodicWord;
use solenoid_core::{presets, Error, IntMatrix, SftSystem};

pub enum Loaded<T> {
    /// The value plus the canonical JSON it was derived from (for digests).
    Value(T, String),
}

fn read_source(input: &Option<PathBuf>) -> Result<String, Error> {
    match input {
        Some(p) if p.as_os_str() == "-" => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidParameter(format!("stdin: {e}")))?;
            Ok(buf)
        }
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidParameter(format!("{}: {e}", p.display()))),
        None => Err(Error::InvalidParameter(
            "provide --preset NAME or --input FILE (use - for stdin)".into(),
        )),
    }
}

pub fn load_sft(preset: &Option<String>, input: &Option<PathBuf>) -> Result<Loaded<SftSystem>, Error> {
    let system = match preset {
        Some(name) => presets::sft_preset(name)?,
        None => {
            let raw = read_source(input)?;
            serde_json::from_str(&raw)
                .map_err(|e| Error::InvalidParameter(format!("sft json: {e}")))?
        }
    };
    let canonical = serde_json::to_string(&system).expect("sft serializes");
    Ok(Loaded::Value(system, canonical))
}

pub fn load_matrix(preset: &Option<String>, input: &Option<PathBuf>) -> Result<Loaded<IntMatrix>, Error> {
    let matrix = match preset {
        Some(name) => presets::torus_preset(name)?,
        None => {
            let raw = read_source(input)?;
            serde_json::from_str(&raw)
                .map_err(|e| Error::InvalidParameter(format!("matrix json: {e}")))?
        }
    };
    let canonical = serde_json::to_string(&matrix).expect("matrix serializes");
    Ok(Loaded::Value(matrix, canonical))
}

pub fn load_automaton(
    preset: &Option<String>,
    input: &Option<PathBuf>,
) -> Result<Loaded<MealyAutomaton>, Error> {
    let (aut, canonical) = match preset {
        Some(name) => {
            let aut = presets::automaton_preset(name)?;
            let canonical = serde_json::to_string(&aut).expect("automaton serializes");
            (aut, canonical)
        }
        None => {
            let raw = read_source(input)?;
            let spec: AutomatonSpec = serde_json::from_str(&raw)
                .map_err(|e| Error::InvalidParameter(format!("automaton json: {e}")))?;
            let canonical = serde_json::to_string(&spec).expect("spec serializes");
            (spec.build()?, canonical)
        }
    };
    Ok(Loaded::Value(aut, canonical))
}

/// Finite word over the system alphabet: comma-separated labels, a single
/// whole label, or one character per symbol.
pub fn parse_finite_word(system: &SftSystem, s: &str) -> Result<Vec<usize>, Error> {
    if s.contains(',') {
        return s
            .split(',')
            .map(|t| system.symbol_index(t.trim()))
            .collect();
    }
    if let Ok(idx) = system.symbol_index(s) {
        return Ok(vec![idx]);
    }
    s.chars()
        .map(|c| system.symbol_index(&c.to_string()))
        .collect()
}

/// Eventually periodic word "prefix|cycle" (either part in word syntax);
/// a bare word is a pure cycle.
pub fn parse_ev_word(system: &SftSystem, s: &str) -> Result<EventuallyPeriodicWord, Error> {
    let (prefix, cycle) = match s.split_once('|') {
        Some((p, c)) => (parse_finite_word(system, p)?, parse_finite_word(system, c)?),
        None => (Vec::new(), parse_finite_word(system, s)?),
    };
    system.word(prefix, cycle)
}

/// Comma-separated list of rationals "1/2,1,3/4".
pub fn parse_rationals(s: &str) -> Result<Vec<BigRational>, Error> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let parse_int = |u: &str| -> Result<BigInt, Error> {
                u.parse::<BigInt>()
                    .map_err(|_| Error::InvalidParameter(format!("bad rational {t:?}")))
            };
            match t.split_once('/') {
                Some((num, den)) => {
                    let d = parse_int(den)?;
                    if d == BigInt::from(0) {
                        return Err(Error::InvalidParameter("zero denominator".into()));
                    }
                    Ok(BigRational::new(parse_int(num)?, d))
                }
                None => Ok(BigRational::from(parse_int(t)?)),
            }
        })
        .collect()
}
