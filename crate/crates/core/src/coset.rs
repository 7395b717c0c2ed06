//! Todd–Coxeter coset enumeration.
//!
//! HLT scanning with a Felsch-style deduction pass after every table fill and
//! union-find coincidence processing. When the active-coset limit is reached
//! a full lookahead pass runs before giving up. Coset 0 is always the
//! subgroup itself, and runs are deterministic for a given input order.

use std::collections::HashSet;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const NONE: u32 = u32::MAX;
const MAX_DEDUCTIONS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumStatus {
    Finite,
    LimitExceeded,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumStats {
    /// Cosets defined over the whole run.
    pub total_defined: usize,
    /// Peak number of simultaneously active cosets.
    pub max_active: usize,
}

/// A closed coset table: `actions[g][c]` is the coset `c · g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    actions: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.actions.first().map_or(1, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generator_count(&self) -> usize {
        self.actions.len()
    }

    /// Action of generator `g` as a permutation of the cosets.
    pub fn generator_perm(&self, g: usize) -> Perm {
        Perm::from_zero_based(self.actions[g].clone())
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        if letter.inverse {
            self.actions[letter.generator]
                .iter()
                .position(|&x| x as usize == coset)
                .expect("closed table")
        } else {
            self.actions[letter.generator][coset] as usize
        }
    }

    /// Right action of `word` on the cosets, as a permutation.
    pub fn word_perm(&self, word: &Word) -> Perm {
        let gens: Vec<Perm> = (0..self.generator_count())
            .map(|g| self.generator_perm(g))
            .collect();
        let mut acc = Perm::identity(self.len());
        for l in word.letters() {
            let p = &gens[l.generator];
            acc = if l.inverse {
                acc.then(&p.inverse())
            } else {
                acc.then(p)
            };
        }
        acc
    }

    /// Permutations of every group element, indexed by the coset it sends 0 to.
    ///
    /// Only meaningful for the regular action (trivial subgroup).
    pub fn element_perms(&self) -> Vec<Perm> {
        let n = self.len();
        let gens: Vec<Perm> = (0..self.generator_count())
            .map(|g| self.generator_perm(g))
            .collect();
        let mut out: Vec<Option<Perm>> = vec![None; n];
        out[0] = Some(Perm::identity(n));
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let here = out[c].clone().expect("visited");
            for g in &gens {
                for step in [g.clone(), g.inverse()] {
                    let d = step.apply0(c);
                    if out[d].is_none() {
                        out[d] = Some(here.then(&step));
                        queue.push_back(d);
                    }
                }
            }
        }
        out.into_iter()
            .map(|p| p.expect("table is connected"))
            .collect()
    }

    /// Sorted multiset of element orders (regular action only).
    pub fn element_order_profile(&self) -> Vec<u64> {
        let mut orders: Vec<u64> = self.element_perms().iter().map(Perm::order).collect();
        orders.sort_unstable();
        orders
    }
}

#[derive(Debug, Clone)]
pub struct EnumResult {
    pub status: EnumStatus,
    /// Index of the subgroup when finite; active cosets at abort otherwise.
    pub coset_count: usize,
    pub table: Option<CosetTable>,
    pub stats: EnumStats,
}

impl EnumResult {
    pub fn is_finite(&self) -> bool {
        self.status == EnumStatus::Finite
    }

    pub fn index(&self) -> Option<usize> {
        self.is_finite().then_some(self.coset_count)
    }
}

struct Full;

struct Enumerator {
    ncols: usize,
    relators: Vec<Vec<usize>>,
    // conjugates[x]: cyclic conjugates of relators and their inverses starting with column x
    conjugates: Vec<Vec<Vec<usize>>>,
    table: Vec<u32>,
    parent: Vec<u32>,
    active: usize,
    limit: usize,
    stats: EnumStats,
    queue: Vec<u32>,
    deductions: Vec<(u32, usize)>,
    deductions_overflowed: bool,
}

fn column(l: Letter) -> usize {
    2 * l.generator + usize::from(l.inverse)
}

fn inverse_column(x: usize) -> usize {
    x ^ 1
}

impl Enumerator {
    fn new(pres: &Presentation, limit: usize) -> Enumerator {
        let ncols = 2 * pres.generator_count();
        let relators: Vec<Vec<usize>> = pres
            .relators()
            .iter()
            .filter(|r| !r.is_identity())
            .map(|r| r.letters().iter().map(|&l| column(l)).collect())
            .collect();
        let mut conjugates = vec![Vec::new(); ncols];
        let mut seen = HashSet::new();
        for r in &relators {
            let inv: Vec<usize> = r.iter().rev().map(|&x| inverse_column(x)).collect();
            for base in [r, &inv] {
                for k in 0..base.len() {
                    let mut c = base[k..].to_vec();
                    c.extend_from_slice(&base[..k]);
                    if seen.insert(c.clone()) {
                        conjugates[c[0]].push(c);
                    }
                }
            }
        }
        let mut e = Enumerator {
            ncols,
            relators,
            conjugates,
            table: Vec::new(),
            parent: Vec::new(),
            active: 0,
            limit,
            stats: EnumStats::default(),
            queue: Vec::new(),
            deductions: Vec::new(),
            deductions_overflowed: false,
        };
        e.new_row();
        e
    }

    fn new_row(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.active += 1;
        self.stats.total_defined += 1;
        self.stats.max_active = self.stats.max_active.max(self.active);
        id
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn push_deduction(&mut self, c: u32, x: usize) {
        if self.deductions.len() < MAX_DEDUCTIONS {
            self.deductions.push((c, x));
        } else {
            self.deductions_overflowed = true;
        }
    }

    fn define(&mut self, c: u32, x: usize) -> std::result::Result<u32, Full> {
        if self.active >= self.limit {
            return Err(Full);
        }
        let d = self.new_row();
        self.set(c, x, d);
        self.set(d, inverse_column(x), c);
        self.push_deduction(c, x);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (keep, kill) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[kill as usize] = keep;
        self.active -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(dead, x);
                if d == NONE {
                    continue;
                }
                let xi = inverse_column(x);
                if self.get(d, xi) == dead {
                    self.set(d, xi, NONE);
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.get(nu, xi);
                    if nu_xi != NONE {
                        self.merge(mu, nu_xi);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, xi, mu);
                        self.push_deduction(mu, x);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `rel` at coset `start`, defining new cosets when `fill` is set.
    fn scan(&mut self, start: u32, rel: &[usize], fill: bool) -> std::result::Result<(), Full> {
        if rel.is_empty() {
            return Ok(());
        }
        let mut f = start;
        let mut i = 0usize;
        let mut b = start;
        let mut j = rel.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let next = self.get(f, rel[i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if (i as isize) > j {
                if f != start {
                    self.coincidence(f, start);
                }
                return Ok(());
            }
            while j >= i as isize {
                let next = self.get(b, inverse_column(rel[j as usize]));
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = rel[i];
                self.set(f, x, b);
                self.set(b, inverse_column(x), f);
                self.push_deduction(f, x);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.alive(c) {
                continue;
            }
            let d = self.get(c, x);
            let conj = std::mem::take(&mut self.conjugates[x]);
            for r in &conj {
                if !self.alive(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            self.conjugates[x] = conj;
            if d == NONE {
                continue;
            }
            let d = self.rep(d);
            let xi = inverse_column(x);
            let conj = std::mem::take(&mut self.conjugates[xi]);
            for r in &conj {
                if !self.alive(d) {
                    break;
                }
                let _ = self.scan(d, r, false);
            }
            self.conjugates[xi] = conj;
        }
        if self.deductions_overflowed {
            self.deductions_overflowed = false;
            self.lookahead();
        }
    }

    fn lookahead(&mut self) {
        let relators = std::mem::take(&mut self.relators);
        let mut c = 0;
        while (c as usize) < self.parent.len() {
            for r in &relators {
                if !self.alive(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
        self.relators = relators;
        self.deductions.clear();
    }

    /// Renumbers live cosets in order; returns the new position of `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        let n = self.parent.len();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        let mut new_cursor = NONE;
        for c in 0..n as u32 {
            if c == cursor {
                new_cursor = next;
            }
            if self.alive(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        if new_cursor == NONE {
            new_cursor = next;
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..n as u32 {
            if !self.alive(c) {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.get(c, x);
                table.push(if v == NONE {
                    NONE
                } else {
                    map[self.rep(v) as usize]
                });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.deductions.clear();
        new_cursor
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> bool {
        for h in subgroup {
            loop {
                match self.scan(0, h, true) {
                    Ok(()) => {
                        self.process_deductions();
                        break;
                    }
                    Err(Full) => {
                        if !self.make_room() {
                            return false;
                        }
                    }
                }
            }
        }
        let mut cursor = 0u32;
        'outer: while (cursor as usize) < self.parent.len() {
            if self.alive(cursor) {
                let mut k = 0;
                while k < self.relators.len() + self.ncols {
                    if !self.alive(cursor) {
                        break;
                    }
                    let step = if k < self.relators.len() {
                        let r = self.relators[k].clone();
                        self.scan(cursor, &r, true)
                    } else {
                        let x = k - self.relators.len();
                        if self.get(cursor, x) == NONE {
                            self.define(cursor, x).map(|_| ())
                        } else {
                            Ok(())
                        }
                    };
                    match step {
                        Ok(()) => {
                            self.process_deductions();
                            k += 1;
                        }
                        Err(Full) => {
                            if !self.make_room() {
                                return false;
                            }
                            cursor = self.compact(cursor);
                            continue 'outer;
                        }
                    }
                }
            }
            cursor += 1;
        }
        true
    }

    fn make_room(&mut self) -> bool {
        self.process_deductions();
        self.lookahead();
        self.active < self.limit
    }

    fn finish(mut self) -> CosetTable {
        self.compact(0);
        let n = self.parent.len();
        let actions = (0..self.ncols / 2)
            .map(|g| (0..n as u32).map(|c| self.get(c, 2 * g)).collect())
            .collect();
        CosetTable { actions }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` (trivial
/// when empty). `LimitExceeded` is not evidence of infinite index.
pub fn todd_coxeter(
    pres: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<EnumResult> {
    if max_cosets == 0 {
        return Err(Error::ZeroCosetLimit);
    }
    for h in subgroup {
        if !crate::word::same_alphabet(h.alphabet(), pres.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
    }
    let subgroup: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|h| {
            h.to_mode(crate::word::Mode::Free)
                .letters()
                .iter()
                .map(|&l| column(l))
                .collect()
        })
        .collect();
    let mut e = Enumerator::new(pres, max_cosets);
    if !e.run(&subgroup) {
        return Ok(EnumResult {
            status: EnumStatus::LimitExceeded,
            coset_count: e.active,
            table: None,
            stats: e.stats,
        });
    }
    let stats = e.stats;
    let table = e.finish();
    Ok(EnumResult {
        status: EnumStatus::Finite,
        coset_count: table.len(),
        table: Some(table),
        stats,
    })
}

/// Order of `w` in the group presented by `pres`, via the regular action.
pub fn element_order(pres: &Presentation, w: &Word, max_cosets: usize) -> Result<u64> {
    let result = todd_coxeter(pres, &[], max_cosets)?;
    let table = result.table.ok_or(Error::CosetLimit(max_cosets))?;
    Ok(table.word_perm(&w.to_mode(crate::word::Mode::Free)).order())
}

/// Size of the group generated by `perms`, by breadth-first closure.
pub fn brute_force_order(perms: &[Perm]) -> Result<usize> {
    let Some(first) = perms.first() else {
        return Ok(1);
    };
    let n = first.degree();
    if let Some(p) = perms.iter().find(|p| p.degree() != n) {
        return Err(Error::DegreeMismatch(n, p.degree()));
    }
    let id = Perm::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for p in perms {
            let h = g.then(p);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    Ok(seen.len())
}
