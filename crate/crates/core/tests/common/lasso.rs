use adsyn::logic::{Letter, Ltl};

/// Ultimately periodic word unrolled into positions `0..len` where the last
/// position loops back to `loop_to`.
pub struct Positions {
    letters: Vec<Letter>,
    loop_to: usize,
}

impl Positions {
    pub fn new(prefix: &[Letter], cycle: &[Letter]) -> Self {
        assert!(!cycle.is_empty() && prefix.len() + cycle.len() <= 32);
        Positions { letters: prefix.iter().chain(cycle).copied().collect(), loop_to: prefix.len() }
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn all(&self) -> u32 {
        ((1u64 << self.len()) - 1) as u32
    }

    /// Positions whose successor lies in `m`.
    fn pre(&self, m: u32) -> u32 {
        let last = self.len() - 1;
        let shifted = (m >> 1) & !(1 << last);
        shifted | ((m >> self.loop_to) & 1) << last
    }

    /// Set of positions where `f` holds: each position determines its suffix.
    pub fn eval(&self, f: &Ltl) -> u32 {
        match f {
            Ltl::True => self.all(),
            Ltl::Atom(p) => (0..self.len()).filter(|&i| self.letters[i].contains(*p)).fold(0, |m, i| m | 1 << i),
            Ltl::Not(g) => !self.eval(g) & self.all(),
            Ltl::And(a, b) => self.eval(a) & self.eval(b),
            Ltl::Or(a, b) => self.eval(a) | self.eval(b),
            Ltl::F(g) => self.until(self.all(), self.eval(g)),
            Ltl::G(g) => !self.until(self.all(), !self.eval(g) & self.all()) & self.all(),
            Ltl::U(a, b) => self.until(self.eval(a), self.eval(b)),
        }
    }

    /// Least fixpoint of `Z = b ∪ (a ∩ pre Z)`.
    fn until(&self, a: u32, b: u32) -> u32 {
        let mut z = 0;
        loop {
            let next = b | (a & self.pre(z));
            if next == z {
                return z;
            }
            z = next;
        }
    }

    pub fn holds(&self, f: &Ltl) -> bool {
        self.eval(f) & 1 == 1
    }
}

/// Every letter sequence of length exactly `n` over `letters` letters.
pub fn sequences(letters: u32, n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| (0..letters).map(move |l| {
                let mut t = s.clone();
                t.push(Letter(l));
                t
            }))
            .collect();
    }
    out
}

/// Every sequence of length `0..=max` (or `1..=max` when `nonempty`).
pub fn sequences_upto(letters: u32, max: usize, nonempty: bool) -> Vec<Vec<Letter>> {
    let lo = usize::from(nonempty);
    (lo..=max).flat_map(|n| sequences(letters, n)).collect()
}

/// Literals over `atoms` propositions: `p0, !p0, p1, !p1, …`.
pub fn literals(atoms: usize) -> Vec<Ltl> {
    (0..atoms).flat_map(|p| [Ltl::atom(p), Ltl::not(Ltl::atom(p))]).collect()
}

/// Subsets of `pool` with at most two elements.
fn upto_two(pool: &[Ltl]) -> Vec<Vec<Ltl>> {
    let mut out = vec![vec![]];
    for i in 0..pool.len() {
        out.push(vec![pool[i].clone()]);
        for j in i + 1..pool.len() {
            out.push(vec![pool[i].clone(), pool[j].clone()]);
        }
    }
    out
}

/// Every non-trivial `⋀ G b ∧ ⋀ GF c ∧ ⋀ F d` with at most two guards from
/// `pool` per class.
pub fn fragment_formulas(pool: &[Ltl]) -> Vec<Ltl> {
    let classes = upto_two(pool);
    let mut out = Vec::new();
    for gs in &classes {
        for rs in &classes {
            for fs in &classes {
                let conj: Vec<Ltl> = gs
                    .iter()
                    .map(|b| Ltl::globally(b.clone()))
                    .chain(rs.iter().map(|c| Ltl::globally(Ltl::finally(c.clone()))))
                    .chain(fs.iter().map(|d| Ltl::finally(d.clone())))
                    .collect();
                if let Some(f) = conj.into_iter().reduce(Ltl::and) {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Outcome of a full sweep: number of (formula, word) checks, or the first
/// disagreement.
pub struct SweepReport {
    pub formulas: usize,
    pub words: usize,
    pub checks: u64,
    pub mismatch: Option<String>,
}

/// Every fragment formula with at most two literal guards per class over
/// `atoms` propositions against every lasso with `|prefix| ≤ max_prefix`
/// and `1 ≤ |cycle| ≤ max_cycle`.
///
/// The semantic side evaluates each temporal conjunct once per word and
/// combines them pointwise; the automaton side runs `accepts` once per
/// (state reached by a prefix, cycle), which is exact since the automaton
/// is deterministic.
pub fn sweep_fragment(atoms: usize, max_prefix: usize, max_cycle: usize) -> SweepReport {
    use adsyn::logic::{compile_to_dra, Alphabet, LassoWord};
    use std::collections::HashMap;

    let names = ["p", "q", "r"];
    let a = Alphabet::new(names.into_iter().take(atoms)).unwrap();
    let letters = a.letter_count() as u32;
    let prefixes = sequences_upto(letters, max_prefix, false);
    let cycles = sequences_upto(letters, max_cycle, true);

    let pool = literals(atoms);
    let mut conjuncts: Vec<Ltl> = Vec::new();
    for l in &pool {
        conjuncts.push(Ltl::globally(l.clone()));
        conjuncts.push(Ltl::globally(Ltl::finally(l.clone())));
        conjuncts.push(Ltl::finally(l.clone()));
    }
    assert!(conjuncts.len() <= 64);
    // semantics of every conjunct on every word
    let truth: Vec<Vec<u64>> = prefixes
        .iter()
        .map(|p| {
            cycles
                .iter()
                .map(|c| {
                    let pos = Positions::new(p, c);
                    conjuncts.iter().enumerate().fold(0u64, |m, (i, f)| m | (pos.holds(f) as u64) << i)
                })
                .collect()
        })
        .collect();

    let formulas = fragment_formulas(&pool);
    let mut checks = 0u64;
    for f in &formulas {
        let mut need = 0u64;
        collect_conjuncts(f, &conjuncts, &mut need);
        let dra = compile_to_dra(f, &a).unwrap();
        if dra.pairs().len() != 1 {
            return SweepReport { formulas: formulas.len(), words: 0, checks, mismatch: Some(format!("{}: {} pairs", f.display(&a), dra.pairs().len())) };
        }
        let mut verdicts: HashMap<usize, Vec<bool>> = HashMap::new();
        for (pi, p) in prefixes.iter().enumerate() {
            let s = p.iter().fold(dra.initial(), |s, &l| dra.step(s, l));
            let row = verdicts.entry(s).or_insert_with(|| {
                cycles.iter().map(|c| dra.accepts(&LassoWord::new(p.clone(), c.clone()).unwrap())).collect()
            });
            for (ci, &got) in row.iter().enumerate() {
                let expected = truth[pi][ci] & need == need;
                checks += 1;
                if got != expected {
                    return SweepReport {
                        formulas: formulas.len(),
                        words: prefixes.len() * cycles.len(),
                        checks,
                        mismatch: Some(format!("{} on {:?}·({:?})^ω: automaton {got}", f.display(&a), p, cycles[ci])),
                    };
                }
            }
        }
    }
    SweepReport { formulas: formulas.len(), words: prefixes.len() * cycles.len(), checks, mismatch: None }
}

fn collect_conjuncts(f: &Ltl, conjuncts: &[Ltl], need: &mut u64) {
    match f {
        Ltl::And(a, b) => {
            collect_conjuncts(a, conjuncts, need);
            collect_conjuncts(b, conjuncts, need);
        }
        other => {
            let i = conjuncts.iter().position(|c| c == other).expect("generated conjunct");
            *need |= 1 << i;
        }
    }
}
