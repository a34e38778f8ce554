//! Verdicts: exhaustive and symbolic identity checks, condition cross-checks
//! over coefficient space, witness search and the example ledger.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, ConditionPredicate, IdentityEntry, StructureKind, TableRow};
use crate::groupoid::{GroupoidError, LinearGroupoid, LocalKind, Triple, Undefined};
use crate::modring::Scalar;
use crate::termlang::{expand_affine, Identity, NaReason, Term};

/// Default bound on `n^k`, the number of environments one check may visit.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Below this many environments a check runs on the calling thread.
const PARALLEL_THRESHOLD: u64 = 1 << 20;
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("enumeration of {n}^{k} environments exceeds the cap of {cap}")]
    CapExceeded { n: u64, k: usize, cap: u64 },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("entry `{0}` has no defining identity")]
    NoIdentity(String),
    #[error("entry `{entry}` has no row `{row}`")]
    UnknownRow { entry: String, row: String },
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub cap: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    Symbolic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Binding {
    pub var: char,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Binding>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub na_reason: Option<String>,
}

impl CheckOutcome {
    fn holds(method: Method) -> Self {
        Self { verdict: Verdict::Holds, method, counterexample: None, na_reason: None }
    }

    fn fails(method: Method, counterexample: Option<Vec<Binding>>) -> Self {
        Self { verdict: Verdict::Fails, method, counterexample, na_reason: None }
    }

    fn not_applicable(method: Method, why: &NaReason) -> Self {
        Self { verdict: Verdict::NotApplicable, method, counterexample: None, na_reason: Some(why.to_string()) }
    }
}

// ---- brute force ------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum Op {
    Var(usize),
    Prod,
    LDiv,
    RDiv,
    Local(LocalKind),
}

fn compile(t: &Term, vars: &[char], out: &mut Vec<Op>) {
    match t {
        Term::Var(v) => out.push(Op::Var(vars.iter().position(|x| x == v).expect("variable listed"))),
        Term::Prod(l, r) | Term::LDiv(l, r) | Term::RDiv(l, r) => {
            compile(l, vars, out);
            compile(r, vars, out);
            out.push(match t {
                Term::Prod(..) => Op::Prod,
                Term::LDiv(..) => Op::LDiv,
                _ => Op::RDiv,
            });
        }
        Term::Rho(x) | Term::Lambda(x) | Term::ERho(x) | Term::ELambda(x) => {
            compile(x, vars, out);
            out.push(Op::Local(t.unary_kind().expect("unary node")));
        }
    }
}

const NO_SOLUTION: u64 = u64::MAX;
const NON_UNIQUE: u64 = u64::MAX - 1;

fn encode(e: crate::groupoid::LocalElement<impl Scalar>) -> u64 {
    match e.outcome {
        Ok(v) => v.value().as_u64(),
        Err(Undefined::NoSolution) => NO_SOLUTION,
        Err(Undefined::NonUnique) => NON_UNIQUE,
    }
}

fn decode(kind: LocalKind, v: u64) -> Result<u64, NaReason> {
    match v {
        NO_SOLUTION => Err(NaReason::Undefined { kind, why: Undefined::NoSolution }),
        NON_UNIQUE => Err(NaReason::Undefined { kind, why: Undefined::NonUnique }),
        v => Ok(v),
    }
}

/// Tables above this side length are not materialized.
const TABLE_LIMIT: u64 = 1024;

enum Binary {
    Unused,
    Table(Vec<u64>),
    Direct,
}

/// Precomputed operation tables for one groupoid; local elements come from
/// the groupoid's own congruence solver, never from closed forms.
struct Kernel<'g, T: Scalar> {
    g: &'g LinearGroupoid<T>,
    n: u64,
    prod: Option<Vec<u32>>,
    local: [Option<Vec<u64>>; 4],
    ldiv: Binary,
    rdiv: Binary,
    fully_defined: bool,
}

fn local_slot(kind: LocalKind) -> usize {
    match kind {
        LocalKind::ERho => 0,
        LocalKind::ELambda => 1,
        LocalKind::Rho => 2,
        LocalKind::Lambda => 3,
        LocalKind::LDiv | LocalKind::RDiv => unreachable!("binary kind"),
    }
}

impl<'g, T: Scalar> Kernel<'g, T> {
    fn new(g: &'g LinearGroupoid<T>, kinds: &[LocalKind]) -> Self {
        let n = g.n().as_u64();
        let m = g.modulus();
        let small = n <= TABLE_LIMIT;
        let res = |v: u64| m.residue(T::from_wide(v as u128));
        let prod = small.then(|| {
            let mut t = Vec::with_capacity((n * n) as usize);
            for x in 0..n {
                for y in 0..n {
                    t.push(g.apply(res(x), res(y)).value().as_u64() as u32);
                }
            }
            t
        });
        let mut fully_defined = true;
        let mut local: [Option<Vec<u64>>; 4] = Default::default();
        let (mut ldiv, mut rdiv) = (Binary::Unused, Binary::Unused);
        for &kind in kinds {
            match kind {
                LocalKind::LDiv | LocalKind::RDiv => {
                    let table = if small {
                        let mut t = Vec::with_capacity((n * n) as usize);
                        for p in 0..n {
                            for q in 0..n {
                                t.push(encode(match kind {
                                    LocalKind::LDiv => g.left_divide(res(p), res(q)),
                                    _ => g.right_divide(res(p), res(q)),
                                }));
                            }
                        }
                        fully_defined &= t.iter().all(|&v| v < NON_UNIQUE);
                        Binary::Table(t)
                    } else {
                        let coeff = if kind == LocalKind::LDiv { g.c() } else { g.b() };
                        fully_defined &= coeff.is_unit();
                        Binary::Direct
                    };
                    if kind == LocalKind::LDiv {
                        ldiv = table;
                    } else {
                        rdiv = table;
                    }
                }
                _ => {
                    let slot = local_slot(kind);
                    if local[slot].is_some() {
                        continue;
                    }
                    let t: Vec<u64> = (0..n)
                        .map(|x| {
                            let x = res(x);
                            encode(match kind {
                                LocalKind::ERho => g.local_right_identity(x),
                                LocalKind::ELambda => g.local_left_identity(x),
                                LocalKind::Rho => g.right_inverse(x),
                                _ => g.left_inverse(x),
                            })
                        })
                        .collect();
                    fully_defined &= t.iter().all(|&v| v < NON_UNIQUE);
                    local[slot] = Some(t);
                }
            }
        }
        Self { g, n, prod, local, ldiv, rdiv, fully_defined }
    }

    fn product(&self, x: u64, y: u64) -> u64 {
        match &self.prod {
            Some(t) => t[(x * self.n + y) as usize] as u64,
            None => {
                let m = self.g.modulus();
                let r = |v: u64| m.residue(T::from_wide(v as u128));
                self.g.apply(r(x), r(y)).value().as_u64()
            }
        }
    }

    fn divide(&self, kind: LocalKind, p: u64, q: u64) -> Result<u64, NaReason> {
        let table = if kind == LocalKind::LDiv { &self.ldiv } else { &self.rdiv };
        let v = match table {
            Binary::Table(t) => t[(p * self.n + q) as usize],
            Binary::Direct => {
                let m = self.g.modulus();
                let r = |v: u64| m.residue(T::from_wide(v as u128));
                encode(if kind == LocalKind::LDiv {
                    self.g.left_divide(r(p), r(q))
                } else {
                    self.g.right_divide(r(p), r(q))
                })
            }
            Binary::Unused => unreachable!("division table not built"),
        };
        decode(kind, v)
    }

    fn run(&self, prog: &[Op], env: &[u64], stack: &mut Vec<u64>) -> Result<u64, NaReason> {
        stack.clear();
        for op in prog {
            let v = match *op {
                Op::Var(i) => env[i],
                Op::Prod => {
                    let r = stack.pop().expect("operand");
                    let l = stack.pop().expect("operand");
                    self.product(l, r)
                }
                Op::LDiv | Op::RDiv => {
                    let r = stack.pop().expect("operand");
                    let l = stack.pop().expect("operand");
                    // x\z and z/x are stored with the left operand first.
                    self.divide(if matches!(op, Op::LDiv) { LocalKind::LDiv } else { LocalKind::RDiv }, l, r)?
                }
                Op::Local(kind) => {
                    let x = stack.pop().expect("operand");
                    let t = self.local[local_slot(kind)].as_ref().expect("table built");
                    decode(kind, t[x as usize])?
                }
            };
            stack.push(v);
        }
        Ok(stack.pop().expect("result"))
    }
}

enum EnvResult {
    Equal,
    Differ,
    Na(NaReason),
}

struct Compiled {
    vars: Vec<char>,
    lhs: Vec<Op>,
    rhs: Vec<Op>,
    kinds: Vec<LocalKind>,
}

impl Compiled {
    fn new(ident: &Identity) -> Self {
        let vars = ident.variables().to_vec();
        let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
        compile(&ident.lhs, &vars, &mut lhs);
        compile(&ident.rhs, &vars, &mut rhs);
        Self { vars, lhs, rhs, kinds: ident.local_kinds() }
    }
}

fn digits(mut idx: u64, n: u64, out: &mut [u64]) {
    for d in out.iter_mut().rev() {
        *d = idx % n;
        idx /= n;
    }
}

fn advance(env: &mut [u64], n: u64) {
    for d in env.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return;
        }
        *d = 0;
    }
}

/// Scans `[lo, hi)` and returns the first index satisfying `want`.
fn scan_chunk<T: Scalar>(
    kernel: &Kernel<'_, T>,
    c: &Compiled,
    lo: u64,
    hi: u64,
    want: &(dyn Fn(&EnvResult) -> bool + Sync),
) -> Option<(u64, EnvResult)> {
    let mut env = vec![0u64; c.vars.len()];
    digits(lo, kernel.n, &mut env);
    let mut stack = Vec::with_capacity(16);
    for idx in lo..hi {
        let r = match (kernel.run(&c.lhs, &env, &mut stack), kernel.run(&c.rhs, &env, &mut stack)) {
            (Err(e), _) | (_, Err(e)) => EnvResult::Na(e),
            (Ok(l), Ok(r)) if l == r => EnvResult::Equal,
            _ => EnvResult::Differ,
        };
        if want(&r) {
            return Some((idx, r));
        }
        advance(&mut env, kernel.n);
    }
    None
}

fn first_match<T: Scalar>(
    kernel: &Kernel<'_, T>,
    c: &Compiled,
    total: u64,
    want: &(dyn Fn(&EnvResult) -> bool + Sync),
) -> Option<(u64, EnvResult)> {
    if total < PARALLEL_THRESHOLD {
        return scan_chunk(kernel, c, 0, total, want);
    }
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .find_map_first(|i| scan_chunk(kernel, c, i * CHUNK, ((i + 1) * CHUNK).min(total), want))
}

/// Exhaustive check over all `n^k` environments in lexicographic order of
/// the identity's variables. Any undefined local element makes the verdict
/// `NotApplicable`; otherwise the first differing environment is reported.
pub fn holds_bruteforce<T: Scalar>(
    g: &LinearGroupoid<T>,
    ident: &Identity,
    opts: &CheckOptions,
) -> Result<CheckOutcome, EngineError> {
    let n = g.n().as_u64();
    let k = ident.variables().len();
    let total = u32::try_from(k)
        .ok()
        .and_then(|k| n.checked_pow(k))
        .filter(|&t| t <= opts.cap)
        .ok_or(EngineError::CapExceeded { n, k, cap: opts.cap })?;
    let c = Compiled::new(ident);
    let kernel = Kernel::new(g, &c.kinds);

    if !kernel.fully_defined {
        if let Some((_, EnvResult::Na(why))) = first_match(&kernel, &c, total, &|r| matches!(r, EnvResult::Na(_))) {
            return Ok(CheckOutcome::not_applicable(Method::BruteForce, &why));
        }
    }
    Ok(match first_match(&kernel, &c, total, &|r| matches!(r, EnvResult::Differ)) {
        None => CheckOutcome::holds(Method::BruteForce),
        Some((idx, _)) => {
            let mut env = vec![0u64; k];
            digits(idx, n, &mut env);
            let bindings = c.vars.iter().zip(env).map(|(&var, value)| Binding { var, value }).collect();
            CheckOutcome::fails(Method::BruteForce, Some(bindings))
        }
    })
}

/// Compares the affine expansions of both sides coefficient by coefficient.
pub fn holds_symbolic<T: Scalar>(g: &LinearGroupoid<T>, ident: &Identity) -> CheckOutcome {
    match (expand_affine(&ident.lhs, g), expand_affine(&ident.rhs, g)) {
        (Err(why), _) | (_, Err(why)) => CheckOutcome::not_applicable(Method::Symbolic, &why),
        (Ok(l), Ok(r)) if l.difference(&r).is_zero() => CheckOutcome::holds(Method::Symbolic),
        _ => CheckOutcome::fails(Method::Symbolic, None),
    }
}

fn identity_of(entry: &IdentityEntry) -> Result<&Identity, EngineError> {
    entry.identity.as_ref().ok_or_else(|| EngineError::NoIdentity(entry.id.to_string()))
}

pub fn lookup(id: &str) -> Result<&'static IdentityEntry, EngineError> {
    catalog::entry(id).ok_or_else(|| EngineError::UnknownEntry(id.to_string()))
}

pub fn lookup_row(id: &str, label: &str) -> Result<(&'static IdentityEntry, &'static TableRow), EngineError> {
    let e = lookup(id)?;
    let r = e.row(label).ok_or_else(|| EngineError::UnknownRow { entry: id.to_string(), row: label.to_string() })?;
    Ok((e, r))
}

/// Verdict for every catalog entry that has an identity, in id order.
/// Symbolic where applicable; brute force otherwise.
pub fn classify<T: Scalar>(
    g: &LinearGroupoid<T>,
    opts: &CheckOptions,
) -> Result<Vec<(&'static str, CheckOutcome)>, EngineError> {
    let mut entries: Vec<&IdentityEntry> = catalog::catalog_entries().iter().filter(|e| e.identity.is_some()).collect();
    entries.sort_by_key(|e| e.id);
    entries
        .into_par_iter()
        .map(|e| {
            let ident = identity_of(e)?;
            let sym = holds_symbolic(g, ident);
            let outcome = match sym.verdict {
                Verdict::NotApplicable => match holds_bruteforce(g, ident, opts) {
                    Ok(bf) => bf,
                    Err(EngineError::CapExceeded { .. }) => sym,
                    Err(e) => return Err(e),
                },
                _ => sym,
            };
            Ok((e.id, outcome))
        })
        .collect()
}

// ---- sweeps -----------------------------------------------------------

fn triples(n: u64) -> impl Iterator<Item = (u64, u64, u64)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub triple: Triple,
    pub condition: bool,
    pub oracle: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub entry: String,
    pub row: String,
    pub moduli: Vec<u64>,
    /// Triples inside the row's domain (modulus kind, structure, hypothesis).
    pub admitted: u64,
    /// Admitted triples excluded because the oracle was not applicable.
    pub not_applicable: u64,
    pub agreements: u64,
    pub mismatches: Vec<Mismatch>,
}

impl CrosscheckReport {
    pub fn confirmed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

enum Sample {
    Outside,
    NotApplicable,
    Agree,
    Mismatch(Mismatch),
}

/// Compares the row's condition against the brute-force oracle on every
/// admitted triple with `n` in `moduli`.
pub fn crosscheck(
    entry: &IdentityEntry,
    row: &TableRow,
    moduli: &[u64],
    opts: &CheckOptions,
) -> Result<CrosscheckReport, EngineError> {
    let ident = identity_of(entry)?;
    let moduli: Vec<u64> = moduli.iter().copied().filter(|&n| row.modulus_kind.admits(n)).collect();
    let work: Vec<(u64, u64)> = moduli.iter().flat_map(|&n| (0..n).map(move |a| (n, a))).collect();
    let samples: Vec<Vec<Sample>> = work
        .into_par_iter()
        .map(|(n, a)| {
            let mut out = Vec::new();
            for b in 0..n {
                for c in 0..n {
                    let g = LinearGroupoid::new(n, a, b, c)?;
                    if !row.admits(&g) {
                        out.push(Sample::Outside);
                        continue;
                    }
                    let oracle = holds_bruteforce(&g, ident, opts)?.verdict;
                    if oracle == Verdict::NotApplicable {
                        out.push(Sample::NotApplicable);
                        continue;
                    }
                    let condition = row.condition_holds(&g);
                    out.push(if condition == (oracle == Verdict::Holds) {
                        Sample::Agree
                    } else {
                        Sample::Mismatch(Mismatch { triple: g.triple(), condition, oracle })
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_, EngineError>>()?;

    let mut report = CrosscheckReport {
        entry: entry.id.to_string(),
        row: row.label(),
        moduli,
        admitted: 0,
        not_applicable: 0,
        agreements: 0,
        mismatches: Vec::new(),
    };
    for s in samples.into_iter().flatten() {
        match s {
            Sample::Outside => continue,
            Sample::NotApplicable => report.not_applicable += 1,
            Sample::Agree => report.agreements += 1,
            Sample::Mismatch(m) => report.mismatches.push(m),
        }
        report.admitted += 1;
    }
    Ok(report)
}

/// Every `(entry, row)` pair with an identity, crosschecked in catalog order.
pub fn crosscheck_all(moduli: &[u64], opts: &CheckOptions) -> Result<Vec<CrosscheckReport>, EngineError> {
    catalog::table_rows()
        .filter(|(e, _)| e.identity.is_some())
        .map(|(e, r)| crosscheck(e, r, moduli, opts))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub triple: Triple,
    pub confirmed_by: Method,
    pub structure_kind: StructureKind,
}

/// Triples in ascending `(n, a, b, c)` order that lie in the row's domain
/// and satisfy the identity by brute force, up to `limit` of them.
pub fn search_witnesses(
    entry: &IdentityEntry,
    row: &TableRow,
    moduli: &[u64],
    limit: usize,
    opts: &CheckOptions,
) -> Result<Vec<Witness>, EngineError> {
    let ident = identity_of(entry)?;
    let mut moduli: Vec<u64> = moduli.iter().copied().filter(|&n| row.modulus_kind.admits(n)).collect();
    moduli.sort_unstable();
    moduli.dedup();
    let mut found = Vec::new();
    for n in moduli {
        if found.len() >= limit {
            break;
        }
        let hits: Vec<Option<Witness>> = triples(n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(a, b, c)| {
                let g = LinearGroupoid::new(n, a, b, c)?;
                if !row.admits(&g) || holds_bruteforce(&g, ident, opts)?.verdict != Verdict::Holds {
                    return Ok(None);
                }
                let structure_kind = if g.is_quasigroup() { StructureKind::Quasigroup } else { StructureKind::Groupoid };
                Ok(Some(Witness { triple: g.triple(), confirmed_by: Method::BruteForce, structure_kind }))
            })
            .collect::<Result<_, EngineError>>()?;
        found.extend(hits.into_iter().flatten().take(limit - found.len()));
    }
    Ok(found)
}

// ---- ledger -----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Aspect {
    Modulus,
    Structure,
    Hypothesis,
    Condition,
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub source: String,
    pub triple: Triple,
    pub aspect: Aspect,
    pub expected: String,
    pub observed: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DiscrepancyLedger {
    findings: Vec<Finding>,
}

impl DiscrepancyLedger {
    pub fn push(&mut self, f: Finding) {
        self.findings.push(f);
    }

    pub fn len(&self) -> usize {
        self.findings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    /// Findings ordered by source, then triple, then aspect.
    pub fn sorted(&self) -> Vec<Finding> {
        let mut v = self.findings.clone();
        v.sort_by(|x, y| {
            (&x.source, x.triple.n, x.triple.a, x.triple.b, x.triple.c, x.aspect).cmp(&(
                &y.source, y.triple.n, y.triple.a, y.triple.b, y.triple.c, y.aspect,
            ))
        });
        v
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    pub fn involves(&self, source_prefix: &str, t: Triple) -> bool {
        self.findings.iter().any(|f| f.source.starts_with(source_prefix) && f.triple == t)
    }
}

/// An example printed in running text rather than in the table.
pub struct TextExample {
    pub entry: &'static str,
    pub triple: Triple,
    pub structure_kind: StructureKind,
    /// Row whose hypothesis and condition the example is claimed under.
    pub row: Option<&'static str>,
    /// Condition stated in the text when no table row carries it.
    pub condition: Option<&'static str>,
}

pub fn text_examples() -> Vec<TextExample> {
    use StructureKind::{Groupoid as G, Quasigroup as Q};
    let ex = |entry, t: (u64, u64, u64, u64), structure_kind, row, condition| TextExample {
        entry,
        triple: Triple::new(t.0, t.1, t.2, t.3),
        structure_kind,
        row,
        condition,
    };
    vec![
        ex("unipotent", (6, 0, 5, 1), G, Some("2.1"), None),
        ex("unipotent", (6, 1, 5, 1), Q, Some("2.2"), None),
        ex("stein_third", (5, 0, 2, 3), G, Some("14.1"), None),
        ex("stein_third", (5, 0, 2, 3), Q, Some("14.2"), None),
        ex("abel_grassman", (6, 2, 4, 2), G, Some("20.1"), None),
        ex("abel_grassman", (5, 2, 4, 2), Q, Some("20.2"), None),
        ex("external_medial", (6, 4, 2, 2), G, None, Some("b^2=c^2")),
        ex("external_medial", (9, 2, 8, 1), Q, None, Some("b^2=c^2, (b,n)=(c,n)=1")),
        ex("cip_r1", (5, 2, 4, 4), G, Some("45.1"), None),
        ex("cip_r1", (5, 3, 4, 4), Q, Some("45.2"), None),
    ]
}

fn kind_name(k: StructureKind) -> &'static str {
    match k {
        StructureKind::Groupoid => "groupoid",
        StructureKind::Quasigroup => "quasigroup",
    }
}

struct Claim<'a> {
    source: String,
    ident: &'a Identity,
    triple: Triple,
    structure_kind: StructureKind,
    row: Option<&'a TableRow>,
    condition: &'a ConditionPredicate,
}

fn audit(claim: &Claim<'_>, opts: &CheckOptions, ledger: &mut DiscrepancyLedger) -> Result<(), EngineError> {
    let t = claim.triple;
    let g: LinearGroupoid<u64> = t.groupoid()?;
    let mut note = |aspect, expected: String, observed: String| {
        ledger.push(Finding { source: claim.source.clone(), triple: t, aspect, expected, observed })
    };
    if let Some(row) = claim.row {
        if !row.modulus_kind.admits(t.n) {
            note(Aspect::Modulus, "prime modulus".into(), format!("n = {} is composite", t.n));
        }
        if !catalog::hypothesis_holds(&row.hypothesis, &g) {
            note(Aspect::Hypothesis, row.hypothesis.to_string(), "violated".into());
        }
    }
    if claim.structure_kind == StructureKind::Quasigroup && !g.is_quasigroup() {
        note(Aspect::Structure, "quasigroup".into(), "b or c is not a unit".into());
    }
    if !catalog::condition_holds(claim.condition, &g) {
        let failed: Vec<String> = claim
            .condition
            .congruences
            .iter()
            .filter(|p| !p.eval(&g).is_zero())
            .map(|p| format!("{p} = {}", p.eval(&g).value()))
            .collect();
        let observed = if failed.is_empty() { "unit requirement fails".to_string() } else { failed.join(", ") };
        note(Aspect::Condition, claim.condition.text.clone(), observed);
    }
    let outcome = holds_bruteforce(&g, claim.ident, opts)?;
    if outcome.verdict != Verdict::Holds {
        note(Aspect::Identity, "holds".into(), outcome.verdict.to_string());
    }
    Ok(())
}

/// Audits every concrete example, in the table and in the text, against
/// the modulus kind, structure, hypothesis, condition and identity it is
/// claimed to satisfy.
pub fn verify_printed_examples(opts: &CheckOptions) -> Result<DiscrepancyLedger, EngineError> {
    let mut ledger = DiscrepancyLedger::default();
    for (e, r) in catalog::table_rows() {
        let (Some(t), Some(ident)) = (r.printed_example(), e.identity.as_ref()) else { continue };
        let claim = Claim {
            source: format!("row {:>2}.{} {}", r.row, r.sub, e.id),
            ident,
            triple: t,
            structure_kind: r.structure_kind,
            row: Some(r),
            condition: &r.condition,
        };
        audit(&claim, opts, &mut ledger)?;
    }
    for (i, x) in text_examples().iter().enumerate() {
        let e = lookup(x.entry)?;
        let row = x.row.map(|l| lookup_row(x.entry, l).map(|(_, r)| r)).transpose()?;
        let parsed;
        let condition = match (row, x.condition) {
            (Some(r), _) => &r.condition,
            (None, Some(text)) => {
                parsed = ConditionPredicate::parse(text).expect("fixed condition text");
                &parsed
            }
            (None, None) => unreachable!("text example without a condition"),
        };
        let claim = Claim {
            source: format!("text {:>2} {} {}", i + 1, x.entry, kind_name(x.structure_kind)),
            ident: identity_of(e)?,
            triple: x.triple,
            structure_kind: x.structure_kind,
            row,
            condition,
        };
        audit(&claim, opts, &mut ledger)?;
    }
    Ok(ledger)
}

// ---- table report -----------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "triple", rename_all = "snake_case")]
pub enum CellStatus {
    Confirmed,
    Discrepancy,
    Unresolved,
    WitnessFound(Triple),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub entry: String,
    pub name: String,
    pub structure_kind: StructureKind,
    pub modulus_kind: catalog::ModulusKind,
    pub hypothesis: String,
    pub condition: String,
    pub example: catalog::ExampleStatus,
    pub cell: CellStatus,
    /// Condition-vs-oracle mismatches over the report's moduli.
    pub mismatches: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub rows: Vec<ReportRow>,
    pub ledger: Vec<Finding>,
}

/// Regenerates the table with machine-checked cell statuses. Given examples
/// are audited; empty and `?` cells are searched over `search_moduli`;
/// every row with an identity is crosschecked over `check_moduli`.
pub fn table_report(
    check_moduli: &[u64],
    search_moduli: &[u64],
    opts: &CheckOptions,
) -> Result<TableReport, EngineError> {
    let ledger = verify_printed_examples(opts)?;
    let mut rows = Vec::new();
    for (e, r) in catalog::table_rows() {
        let cell = match (&e.identity, r.example_status) {
            (None, _) => CellStatus::Unresolved,
            (Some(_), catalog::ExampleStatus::Given(t)) => {
                let prefix = format!("row {:>2}.{} ", r.row, r.sub);
                if ledger.involves(&prefix, t) {
                    CellStatus::Discrepancy
                } else {
                    CellStatus::Confirmed
                }
            }
            (Some(_), catalog::ExampleStatus::Generic) => CellStatus::Confirmed,
            (Some(_), _) => match search_witnesses(e, r, search_moduli, 1, opts)?.first() {
                Some(w) => CellStatus::WitnessFound(w.triple),
                None => CellStatus::Unresolved,
            },
        };
        let mismatches = match &e.identity {
            Some(_) if !check_moduli.is_empty() => Some(crosscheck(e, r, check_moduli, opts)?.mismatches.len()),
            _ => None,
        };
        // A generic cell claims every triple; a mismatch refutes it.
        let cell = match (cell, r.example_status, mismatches) {
            (CellStatus::Confirmed, catalog::ExampleStatus::Generic, Some(m)) if m > 0 => CellStatus::Discrepancy,
            (c, _, _) => c,
        };
        rows.push(ReportRow {
            label: r.label(),
            entry: e.id.to_string(),
            name: r.name.to_string(),
            structure_kind: r.structure_kind,
            modulus_kind: r.modulus_kind,
            hypothesis: r.hypothesis.to_string(),
            condition: r.condition.text.clone(),
            example: r.example_status,
            cell,
            mismatches,
        });
    }
    Ok(TableReport { rows, ledger: ledger.sorted() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::termlang::parse;

    fn g(n: u64, a: u64, b: u64, c: u64) -> LinearGroupoid<u64> {
        LinearGroupoid::new(n, a, b, c).unwrap()
    }

    fn ident(id: &str) -> Identity {
        catalog::entry(id).unwrap().identity.clone().unwrap()
    }

    fn bf(gr: &LinearGroupoid<u64>, id: &str) -> CheckOutcome {
        holds_bruteforce(gr, &ident(id), &CheckOptions::default()).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(bf(&g(6, 2, 4, 2), "abel_grassman").verdict, Verdict::Holds);
        let idem = bf(&g(6, 0, 1, 2), "idempotent");
        assert_eq!(idem.verdict, Verdict::Fails);
        assert_eq!(idem.counterexample, Some(vec![Binding { var: 'x', value: 1 }]));
        let cip = bf(&g(6, 2, 4, 2), "cip_r1");
        assert_eq!(cip.verdict, Verdict::NotApplicable);
        assert!(cip.na_reason.is_some());
        assert!(cip.counterexample.is_none());
    }

    #[test]
    fn counterexample_is_lexicographically_first() {
        // x*y = y*x fails first at x=0, y=1 when b != c.
        let o = bf(&g(7, 1, 2, 3), "commutative");
        assert_eq!(o.counterexample, Some(vec![Binding { var: 'x', value: 0 }, Binding { var: 'y', value: 1 }]));
    }

    #[test]
    fn symbolic_examples() {
        assert_eq!(holds_symbolic(&g(9, 2, 4, 2), &ident("abel_grassman")).verdict, Verdict::Holds);
        assert_eq!(holds_symbolic(&g(6, 2, 4, 2), &ident("unipotent")).verdict, Verdict::Holds);
        assert_eq!(holds_symbolic(&g(5, 0, 2, 3), &ident("stein_third")).verdict, Verdict::Fails);
        assert_eq!(holds_symbolic(&g(6, 2, 4, 2), &ident("cip_r1")).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn cap_is_enforced() {
        let opts = CheckOptions { cap: 1000 };
        let err = holds_bruteforce(&g(6, 0, 1, 1), &ident("medial"), &opts).unwrap_err();
        assert!(matches!(err, EngineError::CapExceeded { n: 6, k: 4, cap: 1000 }));
        assert!(holds_bruteforce(&g(5, 0, 1, 1), &ident("associative"), &opts).is_ok());
    }

    #[test]
    fn large_modulus_uses_direct_path() {
        let gr = g(2003, 5, 7, 11);
        assert_eq!(bf(&gr, "medial_alternative").verdict, Verdict::Fails);
        assert_eq!(
            holds_bruteforce(&gr, &parse(r"x\x = er(x)").unwrap(), &CheckOptions::default()).unwrap().verdict,
            Verdict::Holds
        );
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        // 40^4 = 2.56M environments crosses the parallel threshold.
        let gr = g(40, 3, 7, 9);
        let seq = {
            let c = Compiled::new(&ident("medial"));
            let k = Kernel::new(&gr, &c.kinds);
            scan_chunk(&k, &c, 0, 40u64.pow(4), &|r| matches!(r, EnvResult::Differ)).map(|x| x.0)
        };
        assert_eq!(seq, None);
        assert_eq!(bf(&gr, "medial").verdict, Verdict::Holds);
        let o = bf(&gr, "first_rectangle");
        let c = Compiled::new(&ident("first_rectangle"));
        let k = Kernel::new(&gr, &c.kinds);
        let first = scan_chunk(&k, &c, 0, 40u64.pow(4), &|r| matches!(r, EnvResult::Differ)).unwrap().0;
        let mut env = vec![0; 4];
        digits(first, 40, &mut env);
        let expect: Vec<Binding> = c.vars.iter().zip(env).map(|(&var, value)| Binding { var, value }).collect();
        assert_eq!(o.counterexample, Some(expect));
    }

    #[test]
    fn classify_examples() {
        let opts = CheckOptions::default();
        let holds = |t: (u64, u64, u64, u64)| -> Vec<&'static str> {
            classify(&g(t.0, t.1, t.2, t.3), &opts)
                .unwrap()
                .into_iter()
                .filter(|(_, o)| o.verdict == Verdict::Holds)
                .map(|(id, _)| id)
                .collect()
        };
        let h = holds((6, 2, 5, 1));
        for id in ["unipotent", "rc4", "rc1", "medial", "r_aip", "l_aip", "r_saip", "l_saip", "e_l", "e_r", "left_f", "right_f"] {
            assert!(h.contains(&id), "{id}");
        }
        let h = holds((5, 0, 1, 1));
        for id in ["associative", "commutative", "medial"] {
            assert!(h.contains(&id), "{id}");
        }
        let h = holds((7, 3, 5, 5));
        let family: Vec<_> = catalog::table_rows().filter(|(_, r)| r.row >= 65).map(|(e, _)| e.id).collect();
        assert_eq!(family.len(), 20);
        for id in family {
            assert!(h.contains(&id), "{id}");
        }
        let ids: Vec<_> = classify(&g(3, 0, 1, 1), &opts).unwrap().into_iter().map(|(id, _)| id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn crosscheck_examples() {
        let opts = CheckOptions::default();
        let moduli: Vec<u64> = (2..=12).collect();
        let (e, r) = lookup_row("unipotent", "2.1").unwrap();
        let rep = crosscheck(e, r, &moduli, &opts).unwrap();
        assert!(rep.confirmed(), "{:?}", rep.mismatches);
        assert!(rep.admitted > 0);
        let (e, r) = lookup_row("stein_third", "14.4").unwrap();
        let rep = crosscheck(e, r, &[2, 3, 5, 7, 11], &opts).unwrap();
        assert_eq!(rep.moduli, [2, 3, 5, 7, 11]);
        // Quasigroup rows skip composite moduli entirely.
        let rep2 = crosscheck(e, r, &moduli, &opts).unwrap();
        assert_eq!(rep.moduli, rep2.moduli);
    }

    #[test]
    fn stein_third_witness() {
        let (e, r) = lookup_row("stein_third", "14.1").unwrap();
        let w = search_witnesses(e, r, &(2..=5).collect::<Vec<_>>(), 1, &CheckOptions::default()).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].triple, Triple::new(5, 0, 1, 3));
        assert_eq!(bf(&g(5, 0, 2, 4), "stein_third").verdict, Verdict::Holds);
    }

    #[test]
    fn suspect_text_example_is_a_finding() {
        let ledger = verify_printed_examples(&CheckOptions::default()).unwrap();
        let t = Triple::new(5, 0, 2, 3);
        let hits: Vec<_> = ledger.findings().iter().filter(|f| f.triple == t).collect();
        assert!(hits.iter().any(|f| f.aspect == Aspect::Condition));
        assert!(hits.iter().any(|f| f.aspect == Aspect::Identity));
        let sorted = ledger.sorted();
        assert_eq!(sorted.len(), ledger.len());
    }
}
