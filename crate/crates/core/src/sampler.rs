//! Seeded samplers for uniform permutations, derangements and the classes
//! `D_{n;k}`.
//!
//! Uniform permutations come from the Chinese restaurant construction: people
//! `1, 2, ...` enter a restaurant with unboundedly many circular tables. When
//! `m` people are seated, the next one sits immediately to the left of any of
//! them or alone at a new table, each of the `m + 1` choices with probability
//! `1/(m + 1)`. Reading `sigma(i) = the person seated to the left of i` gives a
//! uniform permutation, and the tables are its cycles.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::permutation::Permutation;
use crate::{Error, Result};

/// Deterministic random source.
///
/// Backed by ChaCha8. Stream `s` of seed `x` keys the cipher with
/// `ChaCha8Rng::seed_from_u64(x)` and selects ChaCha stream `s`, so distinct
/// streams of one seed never overlap.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self::for_stream(seed, 0)
    }

    pub fn for_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        RngState {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Unbiased draw from `0..bound`.
    ///
    /// Raw words at or above the largest multiple of `bound` are rejected.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let limit = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < limit {
                return x % bound;
            }
        }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }
}

/// Where an arriving person sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seat {
    NewTable,
    /// Immediately to the left of the given seated person.
    LeftOf(usize),
}

/// Seating state of the Chinese restaurant construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrpState {
    /// `left[l - 1]` is the person seated immediately to the left of `l`, or 0
    /// when `l` has not arrived.
    left: Vec<usize>,
    /// Arrival order.
    seated: Vec<usize>,
}

impl CrpState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        CrpState {
            left: Vec::with_capacity(n),
            seated: Vec::with_capacity(n),
        }
    }

    pub fn persons_seated(&self) -> usize {
        self.seated.len()
    }

    /// Seated labels in arrival order.
    pub fn seated(&self) -> &[usize] {
        &self.seated
    }

    pub fn is_seated(&self, label: usize) -> bool {
        label > 0 && self.left.get(label - 1).is_some_and(|&l| l != 0)
    }

    /// The person immediately to the left of `label`.
    pub fn left_of(&self, label: usize) -> Option<usize> {
        self.is_seated(label).then(|| self.left[label - 1])
    }

    /// Seats `label` at an explicit place.
    pub fn seat(&mut self, label: usize, seat: Seat) -> Result<()> {
        if label == 0 {
            return Err(Error::domain("labels start at 1"));
        }
        if self.is_seated(label) {
            return Err(Error::domain(format!("person {label} is already seated")));
        }
        if let Seat::LeftOf(j) = seat {
            if !self.is_seated(j) {
                return Err(Error::domain(format!("person {j} is not seated")));
            }
        }
        if self.left.len() < label {
            self.left.resize(label, 0);
        }
        match seat {
            Seat::NewTable => self.left[label - 1] = label,
            Seat::LeftOf(j) => {
                // j's old left neighbour becomes label's left neighbour.
                self.left[label - 1] = self.left[j - 1];
                self.left[j - 1] = label;
            }
        }
        self.seated.push(label);
        Ok(())
    }

    /// Seats `label` uniformly among the `m + 1` available places, where `m`
    /// people are already seated. Consumes one draw from `rng`.
    pub fn insert(&mut self, label: usize, rng: &mut RngState) -> Result<Seat> {
        if label == 0 || self.is_seated(label) {
            return Err(Error::domain(format!(
                "person {label} cannot be seated twice"
            )));
        }
        let m = self.seated.len();
        let u = rng.index(m + 1);
        let seat = if u == m {
            Seat::NewTable
        } else {
            Seat::LeftOf(self.seated[u])
        };
        self.seat(label, seat)?;
        Ok(seat)
    }

    /// Removes `label` from its table, closing the gap.
    pub fn remove(&mut self, label: usize) -> Result<()> {
        if !self.is_seated(label) {
            return Err(Error::domain(format!("person {label} is not seated")));
        }
        let left = self.left[label - 1];
        if left != label {
            let right = (1..=self.left.len())
                .find(|&r| self.left[r - 1] == label)
                .expect("circular table");
            self.left[right - 1] = left;
        }
        self.left[label - 1] = 0;
        while self.left.last() == Some(&0) {
            self.left.pop();
        }
        self.seated.retain(|&l| l != label);
        Ok(())
    }

    /// Tables as cycles, each listed from its smallest label going leftward;
    /// tables are ordered by smallest label.
    pub fn tables(&self) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.left.len()];
        let mut tables = Vec::new();
        for start in 1..=self.left.len() {
            if self.left[start - 1] == 0 || visited[start - 1] {
                continue;
            }
            let mut table = Vec::new();
            let mut cur = start;
            while !visited[cur - 1] {
                visited[cur - 1] = true;
                table.push(cur);
                cur = self.left[cur - 1];
            }
            tables.push(table);
        }
        tables
    }

    /// The permutation `sigma(i) = left neighbour of i`. Requires the seated
    /// labels to be exactly `1..=m` for some `m >= 1`.
    pub fn to_permutation(&self) -> Result<Permutation> {
        let m = self.seated.len();
        if m == 0 || self.left.len() != m || self.left.contains(&0) {
            return Err(Error::domain("seated labels must be exactly 1..=m"));
        }
        Ok(Permutation::from_vec_unchecked(self.left.clone()))
    }
}

/// Uniform permutation of `[n]`, seating `1, ..., n` in order.
pub fn sample_uniform(n: usize, rng: &mut RngState) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::domain("sample_uniform requires n >= 1"));
    }
    let mut state = CrpState::with_capacity(n);
    for label in 1..=n {
        state.insert(label, rng)?;
    }
    state.to_permutation()
}

/// Uniform permutation of `[n]`, seating people in the given arrival order.
/// `order` must itself be a permutation of `1..=n`.
pub fn sample_uniform_in_order(order: &[usize], rng: &mut RngState) -> Result<Permutation> {
    Permutation::new(order.to_vec())?;
    let mut state = CrpState::with_capacity(order.len());
    for &label in order {
        state.insert(label, rng)?;
    }
    state.to_permutation()
}

/// Uniform derangement of `[n]` and the number of uniform draws it took.
pub fn sample_derangement_counted(n: usize, rng: &mut RngState) -> Result<(Permutation, u64)> {
    if n < 2 {
        return Err(Error::EmptyClass { n, k: 0 });
    }
    let mut attempts = 0;
    loop {
        attempts += 1;
        let p = sample_uniform(n, rng)?;
        if p.is_derangement() {
            return Ok((p, attempts));
        }
    }
}

/// Uniform derangement of `[n]` by rejection from [`sample_uniform`].
pub fn sample_derangement(n: usize, rng: &mut RngState) -> Result<Permutation> {
    sample_derangement_counted(n, rng).map(|(p, _)| p)
}

/// Checks that `D_{n;k}` is a valid, nonempty class.
pub fn check_class(n: usize, k: usize) -> Result<()> {
    if n == 0 || k > n {
        return Err(Error::domain(format!(
            "class requires 0 <= k <= n and n >= 1, got n = {n}, k = {k}"
        )));
    }
    if k + 1 == n {
        return Err(Error::EmptyClass { n, k });
    }
    Ok(())
}

/// Uniform member of `D_{n;k}`: a uniform `k`-set of fixed points, and a
/// uniform derangement of the remaining labels.
pub fn sample_class(n: usize, k: usize, rng: &mut RngState) -> Result<Permutation> {
    check_class(n, k)?;
    let m = n - k;
    if m == 0 {
        return Ok(Permutation::identity(n));
    }
    if k == 0 {
        return sample_derangement(n, rng);
    }

    // Partial Fisher-Yates: labels[..k] become the fixed points.
    let mut labels: Vec<usize> = (1..=n).collect();
    for t in 0..k {
        let s = t + rng.index(n - t);
        labels.swap(t, s);
    }
    let mut rest = labels.split_off(k);
    rest.sort_unstable();

    let inner = sample_derangement(m, rng)?;
    let mut one_line: Vec<usize> = (1..=n).collect();
    for (a, &target) in inner.as_slice().iter().enumerate() {
        one_line[rest[a] - 1] = rest[target - 1];
    }
    Ok(Permutation::from_vec_unchecked(one_line))
}
