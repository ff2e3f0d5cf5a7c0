// SPDX-License-Identifier: Apache-2.0

//! Clause buffer and cardinality constraints.

use alloc::vec::Vec;

/// Growable CNF: literals stored flat with clause end offsets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfBuilder {
    num_vars: u32,
    lits: Vec<i32>,
    ends: Vec<usize>,
}

/// Above this many literals, cardinality constraints use a sequential counter.
pub const PAIRWISE_LIMIT: usize = 5;

impl CnfBuilder {
    /// A builder whose variables `1..=num_vars` are already allocated.
    pub fn new(num_vars: u32) -> Self {
        Self { num_vars, lits: Vec::new(), ends: Vec::new() }
    }

    pub fn fresh(&mut self) -> i32 {
        self.num_vars += 1;
        self.num_vars as i32
    }

    pub fn clause<I: IntoIterator<Item = i32>>(&mut self, lits: I) {
        self.lits.extend(lits);
        debug_assert!(self.lits[self.ends.last().copied().unwrap_or(0)..].iter().all(|&l| l != 0));
        self.ends.push(self.lits.len());
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.ends.len()
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[i32]> + '_ {
        let mut start = 0;
        self.ends.iter().map(move |&end| {
            let c = &self.lits[start..end];
            start = end;
            c
        })
    }

    pub(crate) fn into_parts(self) -> (u32, Vec<i32>, Vec<usize>) {
        (self.num_vars, self.lits, self.ends)
    }
}

/// At most one of `xs` is true. Pairwise for short lists, otherwise a
/// sequential counter with `len - 1` auxiliary variables.
pub fn encode_amo(b: &mut CnfBuilder, xs: &[i32]) {
    let n = xs.len();
    if n <= 1 {
        return;
    }
    if n <= PAIRWISE_LIMIT {
        for i in 0..n {
            for j in i + 1..n {
                b.clause([-xs[i], -xs[j]]);
            }
        }
        return;
    }
    // s_i is true when one of x_1..=x_i is true.
    let mut prev = b.fresh();
    b.clause([-xs[0], prev]);
    for &x in &xs[1..n - 1] {
        let s = b.fresh();
        b.clause([-x, s]);
        b.clause([-prev, s]);
        b.clause([-x, -prev]);
        prev = s;
    }
    b.clause([-xs[n - 1], -prev]);
}

/// Exactly one of `xs` is true. An empty list yields the empty clause.
pub fn encode_eo(b: &mut CnfBuilder, xs: &[i32]) {
    b.clause(xs.iter().copied());
    encode_amo(b, xs);
}
