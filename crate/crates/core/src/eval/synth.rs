//! Seeded synthetic family trees with planted name variants.
//!
//! Each family starts from a founding couple. Every couple has two or three
//! children; every child but those of the last generation marries an
//! outsider and has children of their own. A child takes a forename from a
//! same-sex ancestor (parent, grandparent or great-grandparent, nearer ones
//! more likely) and the surname of the father. With probability
//! `variant_rate` the name is instead one of a few fixed spelling variants of
//! the ancestor's base name, each one or two edits away from it.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ingest::{GroundTruth, RawProfile};
use crate::strsim::edit_distance;

const MALE: &[&str] = &[
    "albert", "arthur", "benjamin", "charles", "daniel", "david", "edward", "francis", "frederick", "george",
    "gregory", "harold", "henry", "isaac", "jacob", "james", "john", "joseph", "lawrence", "leonard",
    "martin", "matthew", "michael", "nathan", "nicholas", "oliver", "patrick", "peter", "philip", "raymond",
    "richard", "robert", "samuel", "simon", "stephen", "thomas", "timothy", "victor", "walter", "william",
];

const FEMALE: &[&str] = &[
    "agnes", "alice", "amelia", "barbara", "beatrice", "caroline", "catherine", "charlotte", "clara", "dorothy",
    "eleanor", "elizabeth", "emily", "esther", "florence", "frances", "grace", "harriet", "helen", "isabel",
    "jane", "josephine", "judith", "louisa", "lucy", "margaret", "martha", "mary", "matilda", "miriam",
    "nancy", "olivia", "rachel", "rebecca", "rosalind", "sarah", "sophia", "susanna", "victoria", "winifred",
];

const SURNAMES: &[&str] = &[
    "abbott", "baker", "barnes", "bennett", "brooks", "campbell", "carter", "chapman", "clarke", "collins",
    "cooper", "crawford", "davies", "dawson", "edwards", "ellis", "fisher", "fletcher", "foster", "gibson",
    "graham", "griffin", "hamilton", "harrison", "hawkins", "holmes", "hughes", "jenkins", "johnson", "kennedy",
    "lambert", "lawson", "marshall", "mason", "mitchell", "morgan", "murphy", "newman", "palmer", "parker",
    "pearson", "porter", "powell", "reynolds", "richards", "robinson", "russell", "sanders", "shepherd", "spencer",
    "stevens", "sullivan", "taylor", "thompson", "turner", "walker", "wallace", "warren", "watson", "wheeler",
];

const VARIANTS_PER_BASE: usize = 3;
/// Chance of reaching back to a parent, grandparent, great-grandparent.
const LEVEL_WEIGHTS: [f64; 3] = [0.6, 0.3, 0.1];
const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
const VOWELS: &[u8] = b"aeiouy";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("generations must be at least 2, got {0}")]
    TooFewGenerations(usize),
    #[error("variant rate must lie in (0, 1], got {0}")]
    BadVariantRate(f64),
    #[error("families must be at least 1")]
    NoFamilies,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticGenealogy {
    pub profiles: Vec<RawProfile>,
    /// Base forename → forename variants that occur in `profiles`.
    pub forename_truth: GroundTruth,
    pub surname_truth: GroundTruth,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sex {
    Male,
    Female,
}

/// A pool name and its spelling variants.
struct Pool {
    bases: Vec<&'static str>,
    variants: Vec<Vec<String>>,
}

struct Person {
    sex: Sex,
    fore_pool: usize,
    fore_base: usize,
    forename: String,
    sur_base: usize,
    surname: String,
    father: Option<usize>,
    mother: Option<usize>,
}

fn mutate_once(rng: &mut ChaCha8Rng, s: &[u8]) -> Vec<u8> {
    let mut out = s.to_vec();
    let pick = |rng: &mut ChaCha8Rng, set: &[u8]| set[rng.gen_range(0..set.len())];
    match rng.gen_range(0..5) {
        0 => {
            // Vowel swap, the commonest spelling drift.
            let vowel_slots: Vec<usize> = (1..out.len()).filter(|&i| VOWELS.contains(&out[i])).collect();
            if let Some(&i) = vowel_slots.choose(rng) {
                out[i] = pick(rng, VOWELS);
            }
        }
        1 => {
            let i = rng.gen_range(1..out.len());
            out[i] = pick(rng, ALPHABET);
        }
        2 if out.len() > 3 => {
            out.remove(rng.gen_range(1..out.len()));
        }
        3 => {
            let i = rng.gen_range(1..out.len());
            out.insert(i, out[i]);
        }
        _ => {
            let i = rng.gen_range(1..=out.len());
            out.insert(i, pick(rng, ALPHABET));
        }
    }
    out
}

fn build_pool(rng: &mut ChaCha8Rng, bases: &[&'static str], taken: &mut BTreeSet<String>) -> Pool {
    let mut variants = Vec::with_capacity(bases.len());
    for &base in bases {
        let mut mine = Vec::with_capacity(VARIANTS_PER_BASE);
        while mine.len() < VARIANTS_PER_BASE {
            let mut v = mutate_once(rng, base.as_bytes());
            if rng.gen_bool(0.3) {
                v = mutate_once(rng, &v);
            }
            let v = String::from_utf8(v).expect("ascii");
            let ed = edit_distance(base, &v);
            if (1..=2).contains(&ed) && !taken.contains(&v) {
                taken.insert(v.clone());
                mine.push(v);
            }
        }
        variants.push(mine);
    }
    Pool { bases: bases.to_vec(), variants }
}

fn capitalize(name: &str) -> String {
    let mut c = name.chars();
    match c.next() {
        Some(first) => first.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Deterministic for a given argument tuple.
pub fn generate_synthetic_genealogy(
    seed: u64,
    families: usize,
    generations: usize,
    variant_rate: f64,
) -> Result<SyntheticGenealogy, SynthError> {
    if generations < 2 {
        return Err(SynthError::TooFewGenerations(generations));
    }
    if !(variant_rate > 0.0 && variant_rate <= 1.0) {
        return Err(SynthError::BadVariantRate(variant_rate));
    }
    if families == 0 {
        return Err(SynthError::NoFamilies);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut taken: BTreeSet<String> =
        MALE.iter().chain(FEMALE).chain(SURNAMES).map(|s| s.to_string()).collect();
    // Pools: 0 male forenames, 1 female forenames, 2 surnames.
    let pools = [build_pool(&mut rng, MALE, &mut taken), build_pool(&mut rng, FEMALE, &mut taken), build_pool(&mut rng, SURNAMES, &mut taken)];

    let mut people: Vec<Person> = Vec::new();
    let fresh = |rng: &mut ChaCha8Rng, sex: Sex, people: &mut Vec<Person>| -> usize {
        let fore_pool = if sex == Sex::Male { 0 } else { 1 };
        let fore_base = rng.gen_range(0..pools[fore_pool].bases.len());
        let sur_base = rng.gen_range(0..SURNAMES.len());
        people.push(Person {
            sex,
            fore_pool,
            fore_base,
            forename: pools[fore_pool].bases[fore_base].to_string(),
            sur_base,
            surname: SURNAMES[sur_base].to_string(),
            father: None,
            mother: None,
        });
        people.len() - 1
    };

    for _ in 0..families {
        let father = fresh(&mut rng, Sex::Male, &mut people);
        let mother = fresh(&mut rng, Sex::Female, &mut people);
        let mut couples = vec![(father, mother)];
        for generation in 1..generations {
            let mut next = Vec::new();
            for &(father, mother) in &couples {
                for _ in 0..rng.gen_range(2..=3) {
                    let sex = if rng.gen_bool(0.5) { Sex::Male } else { Sex::Female };
                    let child = make_child(&mut rng, &pools, &people, father, mother, sex, variant_rate);
                    people.push(child);
                    let child = people.len() - 1;
                    if generation + 1 < generations {
                        let spouse = fresh(&mut rng, if sex == Sex::Male { Sex::Female } else { Sex::Male }, &mut people);
                        next.push(if sex == Sex::Male { (child, spouse) } else { (spouse, child) });
                    }
                }
            }
            couples = next;
        }
    }

    let width = people.len().to_string().len().max(6);
    let id = |i: usize| format!("p{i:0width$}");
    let profiles = people
        .iter()
        .enumerate()
        .map(|(i, p)| RawProfile {
            profile_id: id(i),
            forename: capitalize(&p.forename),
            surname: capitalize(&p.surname),
            father_id: p.father.map(id),
            mother_id: p.mother.map(id),
        })
        .collect();

    let mut fore_pairs: BTreeMap<(usize, usize), BTreeSet<&str>> = BTreeMap::new();
    let mut sur_pairs: BTreeMap<usize, BTreeSet<&str>> = BTreeMap::new();
    for p in &people {
        if p.forename != pools[p.fore_pool].bases[p.fore_base] {
            fore_pairs.entry((p.fore_pool, p.fore_base)).or_default().insert(&p.forename);
        }
        if p.surname != SURNAMES[p.sur_base] {
            sur_pairs.entry(p.sur_base).or_default().insert(&p.surname);
        }
    }
    let pools = &pools;
    let forename_truth = GroundTruth::from_pairs(
        fore_pairs
            .iter()
            .flat_map(|(&(pool, base), vs)| vs.iter().map(move |v| (pools[pool].bases[base], *v))),
    );
    let surname_truth = GroundTruth::from_pairs(
        sur_pairs.iter().flat_map(|(&base, vs)| vs.iter().map(move |v| (SURNAMES[base], *v))),
    );
    Ok(SyntheticGenealogy { profiles, forename_truth, surname_truth })
}

fn make_child(
    rng: &mut ChaCha8Rng,
    pools: &[Pool; 3],
    people: &[Person],
    father: usize,
    mother: usize,
    sex: Sex,
    variant_rate: f64,
) -> Person {
    // Same-sex ancestors by generation distance.
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut frontier = vec![father, mother];
    for _ in 0..3 {
        levels.push(frontier.iter().copied().filter(|&a| people[a].sex == sex).collect());
        frontier = frontier.iter().flat_map(|&a| people[a].father.into_iter().chain(people[a].mother)).collect();
    }
    let weights: Vec<f64> =
        levels.iter().zip(LEVEL_WEIGHTS).map(|(l, w)| if l.is_empty() { 0.0 } else { w }).collect();
    let total: f64 = weights.iter().sum();
    let mut roll = rng.gen_range(0.0..total);
    let mut level = 0;
    while roll >= weights[level] {
        roll -= weights[level];
        level += 1;
    }
    let source = &people[*levels[level].choose(rng).expect("non-empty level")];

    let pool = &pools[source.fore_pool];
    let forename = if rng.gen_bool(variant_rate) {
        pool.variants[source.fore_base].choose(rng).unwrap().clone()
    } else {
        source.forename.clone()
    };
    let dad = &people[father];
    let surname = if rng.gen_bool(variant_rate) {
        pools[2].variants[dad.sur_base].choose(rng).unwrap().clone()
    } else {
        dad.surname.clone()
    };
    Person {
        sex,
        fore_pool: source.fore_pool,
        fore_base: source.fore_base,
        forename,
        sur_base: dad.sur_base,
        surname,
        father: Some(father),
        mother: Some(mother),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = generate_synthetic_genealogy(42, 5, 4, 0.5).unwrap();
        let b = generate_synthetic_genealogy(42, 5, 4, 0.5).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_synthetic_genealogy(43, 5, 4, 0.5).unwrap());
    }

    #[test]
    fn preconditions() {
        assert!(generate_synthetic_genealogy(1, 5, 1, 0.5).is_err());
        assert!(generate_synthetic_genealogy(1, 5, 3, 0.0).is_err());
        assert!(generate_synthetic_genealogy(1, 5, 3, 1.5).is_err());
        assert!(generate_synthetic_genealogy(1, 0, 3, 0.5).is_err());
        assert!(generate_synthetic_genealogy(1, 1, 2, 1.0).is_ok());
    }

    #[test]
    fn planted_variants_are_close() {
        let g = generate_synthetic_genealogy(7, 10, 4, 0.5).unwrap();
        assert!(!g.forename_truth.is_empty());
        for truth in [&g.forename_truth, &g.surname_truth] {
            for e in &truth.entries {
                for v in &e.synonyms {
                    assert!((1..=2).contains(&edit_distance(&e.query, v)), "{} {v}", e.query);
                }
            }
        }
    }

    #[test]
    fn parents_precede_children() {
        let g = generate_synthetic_genealogy(3, 4, 3, 0.5).unwrap();
        let ids: Vec<&str> = g.profiles.iter().map(|p| p.profile_id.as_str()).collect();
        for (i, p) in g.profiles.iter().enumerate() {
            for parent in p.father_id.iter().chain(&p.mother_id) {
                assert!(ids[..i].contains(&parent.as_str()));
            }
        }
    }
}
