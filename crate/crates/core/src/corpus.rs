//! The three built-in orders (`jaw`, `improper`, `pnu`) with checks that
//! guard their transcription, and a sample representation of each.

use crate::embed::find_embeddings;
use crate::error::{Error, Result};
use crate::format::{parse_pos, parse_trep};
use crate::poset::Poset;
use crate::representation::TrapezoidRepresentation;
use crate::solver::{flip_fact, parse_fact, Fact};

pub const NAMES: [&str; 3] = ["jaw", "improper", "pnu"];

/// Jaw elements in the order used for embedding images.
pub const JAW_ORDER: [&str; 9] = ["1", "2", "3", "B", "C", "D", "E", "F", "G"];

/// The endpoint chains every representation of the jaw satisfies on one
/// baseline or, swapping baselines, on the other.
pub const JAW_BOTTOM_CHAIN: &str = "r(B)<l(C)<=r(1)<l(2)<=r(E)<l(D)<=r(2)<l(3)<=r(F)<l(G)";
pub const JAW_TOP_TEETH: &str = "R(E)<L(2)<=R(2)<L(D)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Precedes(&'static str, &'static str),
    Incomparable(&'static str, &'static str),
    /// Exact predecessor set.
    Predecessors(&'static str, &'static [&'static str]),
    /// The jaw embeds with these images for `JAW_ORDER`.
    JawEmbedding([&'static str; 9]),
}

#[derive(Debug, Clone)]
pub struct Assertion {
    pub check: Check,
    /// Short tag naming the argument this relation comes from.
    pub tag: &'static str,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub poset: Poset,
    pub assertions: Vec<Assertion>,
    pub expected_modules: Vec<Vec<&'static str>>,
    pub sample: TrapezoidRepresentation,
}

const JAW_POS: &str = include_str!("../corpus/jaw.pos");
const JAW_TREP: &str = include_str!("../corpus/jaw.trep");
const IMPROPER_POS: &str = include_str!("../corpus/improper.pos");
const IMPROPER_TREP: &str = include_str!("../corpus/improper.trep");
const PNU_POS: &str = include_str!("../corpus/pnu.pos");
const PNU_TREP: &str = include_str!("../corpus/pnu.trep");

fn a(check: Check, tag: &'static str) -> Assertion {
    Assertion { check, tag }
}

fn jaw_assertions() -> Vec<Assertion> {
    use Check::*;
    vec![
        a(Precedes("1", "2"), "chain"),
        a(Precedes("2", "3"), "chain"),
        a(Precedes("1", "D"), "D-over-1"),
        a(Incomparable("D", "2"), "D-overlaps-2"),
        a(Incomparable("D", "3"), "D-overlaps-3"),
        a(Precedes("B", "D"), "B-below-D"),
        a(Incomparable("B", "3"), "B-overlaps-3"),
        a(Incomparable("C", "1"), "C-overlaps-1"),
        a(Incomparable("E", "2"), "E-overlaps-2"),
        a(Precedes("E", "3"), "E-below-3"),
        a(Incomparable("E", "C"), "E-overlaps-C"),
        a(Precedes("E", "F"), "E-below-F"),
        a(Precedes("F", "G"), "F-below-G"),
        a(Incomparable("G", "1"), "G-overlaps-1"),
        a(Incomparable("F", "D"), "F-overlaps-D"),
        a(Incomparable("G", "B"), "G-overlaps-B"),
        a(Precedes("B", "C"), "marked-chain"),
        a(Precedes("E", "D"), "marked-chain"),
        a(Precedes("E", "G"), "marked-chain"),
    ]
}

fn improper_assertions() -> Vec<Assertion> {
    use Check::*;
    vec![
        a(JawEmbedding(["1", "2", "3", "b", "c", "d", "w", "x", "y"]), "first-jaw"),
        a(
            JawEmbedding(["1", "2", "3", "x", "y", "z", "a", "b", "c"]),
            "second-jaw",
        ),
        a(Precedes("a", "N"), "N-clamped"),
        a(Precedes("N", "z"), "N-clamped"),
        a(Precedes("w", "N"), "N-clamped"),
        a(Precedes("N", "d"), "N-clamped"),
        a(Precedes("1", "N"), "N-above-1"),
        a(Incomparable("2", "N"), "N-inside-2"),
        a(Predecessors("b", &["a"]), "pred-b"),
        a(Precedes("a", "3"), "above-a"),
        a(Precedes("a", "z"), "above-a"),
        a(Incomparable("3", "b"), "beside-b"),
        a(Incomparable("z", "b"), "beside-b"),
        a(Incomparable("N", "b"), "beside-b"),
        a(Incomparable("w", "b"), "beside-b"),
        a(Incomparable("a", "2"), "a-beside-2"),
        a(Precedes("x", "z"), "z-above-x-y"),
        a(Precedes("y", "z"), "z-above-x-y"),
    ]
}

fn pnu_assertions() -> Vec<Assertion> {
    use Check::*;
    vec![
        a(JawEmbedding(PNU_FIRST_JAW), "teeth-d-e"),
        a(JawEmbedding(PNU_SECOND_JAW), "second-jaw"),
        a(Precedes("e", "x"), "chain-clamped"),
        a(Precedes("b", "x"), "chain-clamped"),
        a(Precedes("z", "d"), "chain-clamped"),
        a(Precedes("z", "h"), "chain-clamped"),
        a(Precedes("x", "y"), "inserted-chain"),
        a(Precedes("y", "z"), "inserted-chain"),
        a(Incomparable("x", "2"), "chain-inside-2"),
        a(Incomparable("z", "2"), "chain-inside-2"),
        a(Incomparable("x", "3"), "chain-inside-3"),
        a(Incomparable("z", "3"), "chain-inside-3"),
    ]
}

/// Images of `JAW_ORDER` for the two jaw restrictions of `pnu`.
pub const PNU_FIRST_JAW: [&str; 9] = ["1", "2", "3", "b", "c", "d", "e", "f", "g"];
pub const PNU_SECOND_JAW: [&str; 9] = ["2", "3", "a", "f", "g", "h", "b", "c", "d"];

pub fn jaw_poset() -> Poset {
    parse_pos(JAW_POS).expect("jaw data parses")
}

/// The two mirrored endpoint chains of the jaw, transported to `host`
/// along the jaw copy with the given images. The first chain is the
/// bottom-baseline version.
pub fn jaw_chains(host: &Poset, images: &[&str; 9]) -> Result<[Fact; 2]> {
    let jaw = jaw_poset();
    let map = images.iter().map(|s| host.index_of(s)).collect::<Result<Vec<_>>>()?;
    let bottom: Fact = parse_fact(&jaw, &format!("{JAW_BOTTOM_CHAIN},{JAW_TOP_TEETH}"))?
        .iter()
        .map(|a| a.map_elems(|e| map[e]))
        .collect();
    let top = flip_fact(&bottom);
    Ok([bottom, top])
}

fn invalid(name: &str, msg: impl Into<String>) -> Error {
    Error::CorpusInvalid {
        name: name.to_string(),
        msg: msg.into(),
    }
}

fn check_assertion(name: &str, p: &Poset, x: &Assertion) -> Result<()> {
    let ok = match &x.check {
        Check::Precedes(a, b) => p.precedes(a, b)?,
        Check::Incomparable(a, b) => p.incomparable(a, b)?,
        Check::Predecessors(e, want) => {
            let i = p.index_of(e)?;
            let mut got: Vec<&str> = crate::poset::ones(p.predecessors(i)).map(|k| p.name(k)).collect();
            let mut want = want.to_vec();
            got.sort_unstable();
            want.sort_unstable();
            got == want
        }
        Check::JawEmbedding(images) => {
            let jaw = jaw_poset();
            find_embeddings(&jaw, p)
                .iter()
                .any(|e| e.image_names(p) == images.to_vec())
        }
    };
    if ok {
        Ok(())
    } else {
        Err(invalid(name, format!("{:?} fails ({})", x.check, x.tag)))
    }
}

/// Checks that hold for the sample representation beyond `represents`.
fn check_sample(name: &str, p: &Poset, rep: &TrapezoidRepresentation) -> Result<()> {
    if !rep.represents(p)? {
        return Err(invalid(name, "sample does not represent the order"));
    }
    let ok = match name {
        "jaw" => {
            let chain = parse_fact(p, &format!("{JAW_BOTTOM_CHAIN},{JAW_TOP_TEETH}"))?;
            chain.iter().all(|atom| holds(rep, p, atom))
        }
        "improper" => rep.trapezoid_contains("2", "N")? && !rep.is_proper(),
        "pnu" => rep.is_proper() && !rep.is_unit(),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(invalid(name, "sample lacks its advertised properties"))
    }
}

/// Evaluates an ordering atom on a representation.
pub fn holds(rep: &TrapezoidRepresentation, p: &Poset, atom: &crate::solver::Atom) -> bool {
    use crate::solver::Atom;
    let val = |v: crate::solver::Var| rep.trapezoids()[v.elem].endpoint(v.end).clone();
    debug_assert_eq!(rep.names(), p.names());
    match *atom {
        Atom::Lt(u, v) => val(u) < val(v),
        Atom::Le(u, v) => val(u) <= val(v),
        Atom::Eq(u, v) => val(u) == val(v),
        Atom::UnitSum(x) => rep.trapezoids()[x].lengths().sum() == crate::rational::int(2),
    }
}

fn build(name: &'static str, pos: &str, trep: &str) -> Result<CorpusEntry> {
    let poset = parse_pos(pos).map_err(|e| invalid(name, e.to_string()))?;
    let (assertions, expected_modules): (Vec<Assertion>, Vec<Vec<&'static str>>) = match name {
        "jaw" => (jaw_assertions(), vec![vec!["B", "C"], vec!["F", "G"]]),
        "improper" => (improper_assertions(), vec![vec!["b", "c"], vec!["x", "y"]]),
        "pnu" => (
            pnu_assertions(),
            vec![
                vec!["b", "c"],
                vec!["f", "g"],
                vec!["x", "y"],
                vec!["y", "z"],
                vec!["x", "y", "z"],
            ],
        ),
        _ => return Err(Error::UnknownCorpus(name.to_string())),
    };
    for x in &assertions {
        check_assertion(name, &poset, x)?;
    }
    let sample = parse_trep(trep).map_err(|e| invalid(name, e.to_string()))?;
    check_sample(name, &poset, &sample)?;
    Ok(CorpusEntry {
        name,
        poset,
        assertions,
        expected_modules,
        sample,
    })
}

pub fn load_corpus(name: &str) -> Result<CorpusEntry> {
    match name {
        "jaw" => build("jaw", JAW_POS, JAW_TREP),
        "improper" => build("improper", IMPROPER_POS, IMPROPER_TREP),
        "pnu" => build("pnu", PNU_POS, PNU_TREP),
        _ => Err(Error::UnknownCorpus(name.to_string())),
    }
}

/// Validates caller-supplied text against the checks of a named entry.
pub fn load_corpus_from(name: &str, pos: &str, trep: &str) -> Result<CorpusEntry> {
    let name = NAMES
        .iter()
        .find(|n| **n == name)
        .ok_or_else(|| Error::UnknownCorpus(name.to_string()))?;
    build(name, pos, trep)
}

pub fn sample_representation(name: &str) -> Result<TrapezoidRepresentation> {
    Ok(load_corpus(name)?.sample)
}

/// Raw `.pos` text of an entry.
pub fn poset_text(name: &str) -> Result<&'static str> {
    match name {
        "jaw" => Ok(JAW_POS),
        "improper" => Ok(IMPROPER_POS),
        "pnu" => Ok(PNU_POS),
        _ => Err(Error::UnknownCorpus(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_load() {
        for n in NAMES {
            let e = load_corpus(n).unwrap();
            assert!(e.sample.represents(&e.poset).unwrap());
        }
        assert!(matches!(load_corpus("nope"), Err(Error::UnknownCorpus(_))));
    }

    #[test]
    fn sizes() {
        assert_eq!(load_corpus("jaw").unwrap().poset.len(), 9);
        assert_eq!(load_corpus("improper").unwrap().poset.len(), 12);
        assert_eq!(load_corpus("pnu").unwrap().poset.len(), 14);
    }

    #[test]
    fn corrupted_data_is_rejected() {
        let bad = IMPROPER_POS.replace("rel a N\n", "");
        assert!(matches!(
            load_corpus_from("improper", &bad, IMPROPER_TREP),
            Err(Error::CorpusInvalid { .. })
        ));
    }

    #[test]
    fn rebuild_is_identical() {
        for n in NAMES {
            let p = load_corpus(n).unwrap().poset;
            let again = parse_pos(&crate::format::write_pos(&p)).unwrap();
            assert_eq!(p.masks(), again.masks());
        }
    }
}
