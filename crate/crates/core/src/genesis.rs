//! Brute-force construction of the first generations as literal cuts.
//!
//! Generation `α` is the set of all cuts `(A | B)` of the totally ordered
//! set `T_α` of everything born earlier. Cuts are compared by inclusion of
//! their left sets, and a cut is compared with an older number by asking
//! which side the number falls on. Nothing here uses dyadic arithmetic
//! except [`Universe::map_to_dyadic`], so the universe serves as an
//! independent oracle for the rest of the crate.

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::dyadic::{simplest_in_interval, Dyadic};

/// Default maximum generation `build` accepts.
pub const DEFAULT_GENESIS_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenesisError {
    #[error("generation {requested} exceeds the cap {cap}")]
    LimitExceeded { requested: u32, cap: u32 },
}

/// A cut `(A | B)` of `T_generation`; sides are sets of ids of older numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenNumber {
    id: usize,
    generation: u32,
    left: FixedBitSet,
    right: FixedBitSet,
}

impl GenNumber {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn generation(&self) -> u32 {
        self.generation
    }

    pub fn left_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.left.ones()
    }

    pub fn right_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.right.ones()
    }

    pub fn left_contains(&self, id: usize) -> bool {
        self.left.contains(id)
    }

    pub fn right_contains(&self, id: usize) -> bool {
        self.right.contains(id)
    }
}

/// All numbers of generations `0..=max_generation` with their total order.
///
/// Ids are handed out generation by generation, so `T_α` is exactly the
/// id range `0..2^α - 1`.
#[derive(Debug, Clone)]
pub struct Universe {
    numbers: Vec<GenNumber>,
    sorted: Vec<usize>,
    max_generation: u32,
}

impl Universe {
    pub fn build(n: u32) -> Result<Self, GenesisError> {
        Self::build_with_cap(n, DEFAULT_GENESIS_CAP)
    }

    pub fn build_with_cap(n: u32, cap: u32) -> Result<Self, GenesisError> {
        if n > cap {
            return Err(GenesisError::LimitExceeded { requested: n, cap });
        }
        let mut u = Universe {
            numbers: vec![GenNumber {
                id: 0,
                generation: 0,
                left: FixedBitSet::new(),
                right: FixedBitSet::new(),
            }],
            sorted: vec![0],
            max_generation: 0,
        };
        for alpha in 1..=n {
            u.next_generation(alpha);
        }
        Ok(u)
    }

    fn next_generation(&mut self, alpha: u32) {
        let older = self.sorted.clone();
        let size = older.len();
        // a cut of a finite chain is a split into a prefix and a suffix
        for split in 0..=size {
            let mut left = FixedBitSet::with_capacity(size);
            let mut right = FixedBitSet::with_capacity(size);
            for &id in &older[..split] {
                left.insert(id);
            }
            for &id in &older[split..] {
                right.insert(id);
            }
            let id = self.numbers.len();
            self.numbers.push(GenNumber {
                id,
                generation: alpha,
                left,
                right,
            });
        }
        let mut all: Vec<usize> = (0..self.numbers.len()).collect();
        all.sort_by(|&a, &b| self.compare(a, b));
        self.sorted = all;
        self.max_generation = alpha;
    }

    pub fn max_generation(&self) -> u32 {
        self.max_generation
    }

    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }

    pub fn numbers(&self) -> &[GenNumber] {
        &self.numbers
    }

    pub fn number(&self, id: usize) -> &GenNumber {
        &self.numbers[id]
    }

    /// Ids of generation `alpha`, in creation order (which is increasing).
    pub fn generation(&self, alpha: u32) -> &[GenNumber] {
        if alpha > self.max_generation {
            return &[];
        }
        let start = (1usize << alpha) - 1;
        let end = (1usize << (alpha + 1)) - 1;
        &self.numbers[start..end]
    }

    /// All ids, increasing in the universe order.
    pub fn sorted_ids(&self) -> &[usize] {
        &self.sorted
    }

    /// Inclusion of left sets, for two cuts of the same generation.
    pub fn cut_leq(&self, c1: usize, c2: usize) -> bool {
        let (a, b) = (&self.numbers[c1], &self.numbers[c2]);
        debug_assert_eq!(a.generation, b.generation);
        a.left.is_subset(&b.left)
    }

    /// `x ≤ c` for a number `x` older than the cut `c`: `x` lies in the left side.
    ///
    /// `None` unless `x` is strictly older than `c`.
    pub fn amalgam_leq(&self, x: usize, c: usize) -> Option<bool> {
        let (xn, cn) = (&self.numbers[x], &self.numbers[c]);
        (xn.generation < cn.generation).then(|| cn.left.contains(x))
    }

    /// `c ≤ x` for a number `x` older than the cut `c`: `x` lies in the right side.
    pub fn amalgam_geq(&self, x: usize, c: usize) -> Option<bool> {
        let (xn, cn) = (&self.numbers[x], &self.numbers[c]);
        (xn.generation < cn.generation).then(|| cn.right.contains(x))
    }

    /// The universe order, from the two definitional rules alone.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let (ga, gb) = (self.numbers[a].generation, self.numbers[b].generation);
        match ga.cmp(&gb) {
            Ordering::Equal => self.cut_leq(a, b),
            Ordering::Less => self.amalgam_leq(a, b).expect("a is older"),
            Ordering::Greater => self.amalgam_geq(b, a).expect("b is older"),
        }
    }

    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        match (self.leq(a, b), self.leq(b, a)) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => unreachable!("universe order is total"),
        }
    }

    /// Value of every number, indexed by id: the simplest dyadic between
    /// the values of its two sides.
    pub fn map_to_dyadic(&self) -> Vec<Dyadic> {
        let mut values: Vec<Dyadic> = Vec::with_capacity(self.numbers.len());
        for n in &self.numbers {
            let lo = n.left.ones().map(|i| &values[i]).max();
            let hi = n.right.ones().map(|i| &values[i]).min();
            let v = simplest_in_interval(lo, hi).expect("cut sides are ordered");
            values.push(v);
        }
        values
    }

    /// One line per number: `id  generation  value  left-ids  right-ids`,
    /// fields joined by `sep`, id lists comma-separated with `-` for empty.
    pub fn dump(&self, sep: &str) -> String {
        let values = self.map_to_dyadic();
        let ids = |it: &mut dyn Iterator<Item = usize>| {
            let v: Vec<String> = it.map(|i| i.to_string()).collect();
            if v.is_empty() {
                "-".to_string()
            } else {
                v.join(",")
            }
        };
        let mut out = String::new();
        for n in &self.numbers {
            let fields = [
                n.id.to_string(),
                n.generation.to_string(),
                values[n.id].to_string(),
                ids(&mut n.left.ones()),
                ids(&mut n.right.ones()),
            ];
            out.push_str(&fields.join(sep));
            out.push('\n');
        }
        out
    }
}
