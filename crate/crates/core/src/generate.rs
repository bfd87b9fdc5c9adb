//! Seeded random generation of rule bases.
//!
//! Generation is deterministic: the same configuration (including the seed)
//! always produces the same base, across runs and platforms. The PRNG is
//! ChaCha8 ([`PRNG_ALGORITHM`]), seeded via `seed_from_u64`.
//!
//! Draw order, for reproducibility:
//! 1. each fact: atom index uniform in `0..atoms`, then polarity (negative
//!    with the configured probability); duplicates are redrawn;
//! 2. each rule: body size uniform in `1..=max_body`, then that many
//!    distinct body atoms by rejection, a polarity per body atom, a head
//!    atom, a head polarity; duplicates of earlier elements are redrawn.
//!
//! Polarity uses an integer draw (`random_range(0..den) < num`), so the
//! probability is honored exactly without floating point.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::model::{Atom, Literal, Rule, RuleBase};

/// Identifier of the PRNG used, recorded in reports.
pub const PRNG_ALGORITHM: &str = "chacha8";

/// Shape and seed of a random rule base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// PRNG seed; equal configurations generate equal bases.
    pub seed: u64,
    /// Number of distinct atoms available.
    pub atoms: usize,
    /// Number of facts to generate.
    pub facts: usize,
    /// Number of proper rules to generate.
    pub rules: usize,
    /// Largest body size a rule may have (at least 1).
    pub max_body: usize,
    /// Probability of a literal being negative, as `numerator/denominator`.
    pub negation_num: u32,
    /// See `negation_num`.
    pub negation_den: u32,
}

impl GeneratorConfig {
    /// The default shape (4 atoms, 3 facts, 4 rules, bodies of at most 2
    /// literals, polarity negative half the time) with the given seed.
    pub fn with_seed(seed: u64) -> Self {
        GeneratorConfig {
            seed,
            atoms: 4,
            facts: 3,
            rules: 4,
            max_body: 2,
            negation_num: 1,
            negation_den: 2,
        }
    }
}

/// Generate the rule base described by `config`.
///
/// Fails with [`Error::ShapeInfeasible`] when the requested counts cannot be
/// met with distinct elements (for example more facts than literals), or when
/// rejection sampling exceeds its retry budget.
pub fn generate(config: &GeneratorConfig) -> Result<RuleBase, Error> {
    check_shape(config)?;
    let atoms: Vec<Atom> = (0..config.atoms).map(atom_name).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut elements: Vec<Rule> = Vec::with_capacity(config.facts + config.rules);
    let mut retries_left = 1000 * (config.facts + config.rules) + 1000;
    let mut try_push = |elements: &mut Vec<Rule>, candidate: Rule| -> Result<bool, Error> {
        if elements.contains(&candidate) {
            retries_left = retries_left.checked_sub(1).ok_or(Error::ShapeInfeasible {
                what: "distinct elements",
                requested: config.facts + config.rules,
                available: elements.len(),
            })?;
            Ok(false)
        } else {
            elements.push(candidate);
            Ok(true)
        }
    };

    while elements.len() < config.facts {
        let literal = draw_literal(&mut rng, &atoms, config);
        try_push(&mut elements, Rule::fact(literal))?;
    }
    while elements.len() < config.facts + config.rules {
        let body_size = rng.random_range(1..=config.max_body);
        let mut body_atoms: Vec<usize> = Vec::with_capacity(body_size);
        while body_atoms.len() < body_size {
            let i = rng.random_range(0..config.atoms);
            if !body_atoms.contains(&i) {
                body_atoms.push(i);
            }
        }
        let body: Vec<Literal> = body_atoms
            .into_iter()
            .map(|i| Literal::new(atoms[i].clone(), !draw_negative(&mut rng, config)))
            .collect();
        let head = draw_literal(&mut rng, &atoms, config);
        try_push(&mut elements, Rule::new(body, head))?;
    }
    Ok(RuleBase::new(elements))
}

/// `i` → `a`, `b`, …, `z`, then `a0`, `a1`, … for larger alphabets.
fn atom_name(i: usize) -> Atom {
    let name = if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("a{}", i - 26)
    };
    Atom::new(name).expect("generated atom names are valid")
}

fn draw_negative(rng: &mut ChaCha8Rng, config: &GeneratorConfig) -> bool {
    rng.random_range(0..config.negation_den) < config.negation_num
}

fn draw_literal(rng: &mut ChaCha8Rng, atoms: &[Atom], config: &GeneratorConfig) -> Literal {
    let atom = atoms[rng.random_range(0..atoms.len())].clone();
    Literal::new(atom, !draw_negative(rng, config))
}

fn check_shape(config: &GeneratorConfig) -> Result<(), Error> {
    if config.atoms == 0 && config.facts + config.rules > 0 {
        return Err(Error::ShapeInfeasible {
            what: "atoms",
            requested: 1,
            available: 0,
        });
    }
    if config.negation_den == 0 || config.negation_num > config.negation_den {
        return Err(Error::ShapeInfeasible {
            what: "negation probability",
            requested: config.negation_num as usize,
            available: config.negation_den as usize,
        });
    }
    if config.facts > 2 * config.atoms {
        return Err(Error::ShapeInfeasible {
            what: "distinct facts",
            requested: config.facts,
            available: 2 * config.atoms,
        });
    }
    if config.rules > 0 {
        if config.max_body == 0 {
            return Err(Error::ShapeInfeasible {
                what: "body size",
                requested: 1,
                available: 0,
            });
        }
        // Count the distinct rules expressible with the configured shape:
        // Σ_{k=1..max_body} C(atoms, k) · 2^k bodies, times 2·atoms heads.
        let mut bodies: usize = 0;
        for k in 1..=config.max_body.min(config.atoms) {
            let mut choose: usize = 1;
            for j in 0..k {
                choose = choose.saturating_mul(config.atoms - j) / (j + 1);
            }
            bodies = bodies.saturating_add(choose.saturating_mul(1usize << k.min(63)));
        }
        let expressible = bodies.saturating_mul(2 * config.atoms);
        if config.rules > expressible {
            return Err(Error::ShapeInfeasible {
                what: "distinct rules",
                requested: config.rules,
                available: expressible,
            });
        }
    }
    Ok(())
}
