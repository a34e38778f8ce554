//! The fixed inventory of identities and their tabulated characterizations.
//!
//! Conditions are transcribed in the table's own notation (`c^2=b^2=bc=1`,
//! `(b,n)=(c,n)=1`) and parsed once into congruences over `(a, b, c)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{LinearGroupoid, Triple};
use crate::modring::{Residue, Scalar};
use crate::termlang::{parse, Coefficient, Identity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Groupoid,
    Quasigroup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ModulusKind {
    #[serde(rename = "Z_n")]
    AnyN,
    #[serde(rename = "Z_p")]
    PrimeP,
}

impl ModulusKind {
    pub fn admits(self, n: u64) -> bool {
        match self {
            ModulusKind::AnyN => true,
            ModulusKind::PrimeP => crate::modring::is_prime(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypAtom {
    ANonzero,
    AZero,
    PrimeModulus,
    BUnit,
    CUnit,
    BNeC,
    BNeNegC,
    CNe1,
    BNe1,
    BcPlusBNe1,
    BcPlusCNe1,
    BSqNonzero,
    CSqNonzero,
    Neg1NeBNeC,
    GcdBN1,
    GcdCN1,
}

impl HypAtom {
    pub fn holds<T: Scalar>(self, g: &LinearGroupoid<T>) -> bool {
        let (a, b, c) = (g.a(), g.b(), g.c());
        let one = g.modulus().one();
        match self {
            HypAtom::ANonzero => !a.is_zero(),
            HypAtom::AZero => a.is_zero(),
            HypAtom::PrimeModulus => g.modulus().is_prime(),
            HypAtom::BUnit | HypAtom::GcdBN1 => b.is_unit(),
            HypAtom::CUnit | HypAtom::GcdCN1 => c.is_unit(),
            HypAtom::BNeC => b != c,
            HypAtom::BNeNegC => b != -c,
            HypAtom::CNe1 => c != one,
            HypAtom::BNe1 => b != one,
            HypAtom::BcPlusBNe1 => b * c + b != one,
            HypAtom::BcPlusCNe1 => b * c + c != one,
            HypAtom::BSqNonzero => !(b * b).is_zero(),
            HypAtom::CSqNonzero => !(c * c).is_zero(),
            HypAtom::Neg1NeBNeC => b != -one && b != c,
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            HypAtom::ANonzero => "a!=0",
            HypAtom::AZero => "a=0",
            HypAtom::PrimeModulus => "n prime",
            HypAtom::BUnit => "b invertible",
            HypAtom::CUnit => "c invertible",
            HypAtom::BNeC => "b!=c",
            HypAtom::BNeNegC => "b!=-c",
            HypAtom::CNe1 => "c!=1",
            HypAtom::BNe1 => "b!=1",
            HypAtom::BcPlusBNe1 => "bc+b!=1",
            HypAtom::BcPlusCNe1 => "bc+c!=1",
            HypAtom::BSqNonzero => "b^2!=0",
            HypAtom::CSqNonzero => "c^2!=0",
            HypAtom::Neg1NeBNeC => "-1!=b!=c",
            HypAtom::GcdBN1 => "(b,n)=1",
            HypAtom::GcdCN1 => "(c,n)=1",
        }
    }
}

/// Conjunction of atoms; empty means no hypothesis.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Hypothesis {
    pub atoms: Vec<HypAtom>,
}

impl Hypothesis {
    pub fn new(atoms: &[HypAtom]) -> Self {
        Self { atoms: atoms.to_vec() }
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.atoms.iter().map(|a| a.text()).collect();
        f.write_str(&parts.join(", "))
    }
}

pub fn hypothesis_holds<T: Scalar>(h: &Hypothesis, g: &LinearGroupoid<T>) -> bool {
    h.atoms.iter().all(|atom| atom.holds(g))
}

/// `coeff · a^ea · b^eb · c^ec`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub coeff: i64,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

/// Integer polynomial in the coefficients `a, b, c`, asserted `≡ 0 (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polynomial {
    pub terms: Vec<Monomial>,
}

impl Polynomial {
    fn from_map(map: BTreeMap<(u32, u32, u32), i64>) -> Self {
        // Highest total degree first, then a before b before c.
        let mut terms: Vec<Monomial> = map
            .into_iter()
            .filter(|&(_, k)| k != 0)
            .map(|((a, b, c), coeff)| Monomial { coeff, a, b, c })
            .collect();
        terms.sort_by_key(|m| (std::cmp::Reverse(m.a + m.b + m.c), std::cmp::Reverse((m.a, m.b, m.c))));
        Self { terms }
    }

    fn to_map(&self) -> BTreeMap<(u32, u32, u32), i64> {
        self.terms.iter().map(|m| ((m.a, m.b, m.c), m.coeff)).collect()
    }

    fn minus(&self, other: &Self) -> Self {
        let mut map = self.to_map();
        for m in &other.terms {
            *map.entry((m.a, m.b, m.c)).or_insert(0) -= m.coeff;
        }
        Self::from_map(map)
    }

    pub fn eval<T: Scalar>(&self, g: &LinearGroupoid<T>) -> Residue<T> {
        let m = g.modulus();
        self.terms.iter().fold(m.zero(), |acc, t| {
            acc + m.residue_signed(t.coeff as i128) * g.a().pow(t.a) * g.b().pow(t.b) * g.c().pow(t.c)
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let vars: String = [('a', t.a), ('b', t.b), ('c', t.c)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            let mag = t.coeff.unsigned_abs();
            let sign = if t.coeff < 0 { "-" } else if i > 0 { "+" } else { "" };
            if vars.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag == 1 {
                write!(f, "{sign}{vars}")?;
            } else {
                write!(f, "{sign}{mag}{vars}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad condition `{text}`: {msg}")]
pub struct ConditionError {
    pub text: String,
    pub msg: String,
}

/// Conjunction of polynomial congruences plus unit requirements on `b`, `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionPredicate {
    pub text: String,
    pub congruences: Vec<Polynomial>,
    pub units: Vec<Coefficient>,
}

impl ConditionPredicate {
    /// Parses comma-separated equation chains such as `b=c=1, a=0`. Each
    /// chain `p0 = p1 = … = pk` yields the congruences `pi − pk ≡ 0`.
    pub fn parse(text: &str) -> Result<Self, ConditionError> {
        let fail = |msg: &str| ConditionError { text: text.to_string(), msg: msg.to_string() };
        let mut congruences = Vec::new();
        let mut units = Vec::new();
        for clause in split_clauses(text).into_iter().map(str::trim).filter(|s| !s.is_empty()) {
            let compact: String = clause.chars().filter(|c| !c.is_whitespace()).collect();
            if compact.starts_with('(') {
                match compact.as_str() {
                    "(b,n)=(c,n)=1" => units.extend([Coefficient::B, Coefficient::C]),
                    "(b,n)=1" => units.push(Coefficient::B),
                    "(c,n)=1" => units.push(Coefficient::C),
                    _ => return Err(fail("unknown gcd clause")),
                }
                continue;
            }
            let sides = compact
                .split('=')
                .map(|s| parse_poly(s).ok_or_else(|| fail(&format!("cannot read `{s}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if sides.len() < 2 {
                return Err(fail("clause is not an equation"));
            }
            let last = sides.last().expect("nonempty");
            for side in &sides[..sides.len() - 1] {
                congruences.push(side.minus(last));
            }
        }
        Ok(Self { text: text.trim().trim_end_matches(',').trim().to_string(), congruences, units })
    }

    pub fn always() -> Self {
        Self { text: String::new(), congruences: Vec::new(), units: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.congruences.is_empty() && self.units.is_empty()
    }
}

pub fn condition_holds<T: Scalar>(p: &ConditionPredicate, g: &LinearGroupoid<T>) -> bool {
    p.congruences.iter().all(|q| q.eval(g).is_zero())
        && p.units.iter().all(|u| match u {
            Coefficient::B => g.b().is_unit(),
            Coefficient::C => g.c().is_unit(),
        })
}

/// Splits on commas outside parentheses.
fn split_clauses(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Sum of monomials like `2b^2`, `bc`, `-1`, `b*c`.
fn parse_poly(s: &str) -> Option<Polynomial> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut map = BTreeMap::new();
    if bytes.is_empty() {
        return None;
    }
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return None;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff: i64 = if i > start { s[start..i].parse().ok()? } else { 1 };
        let mut exps = (0u32, 0u32, 0u32);
        let mut saw_var = false;
        while i < bytes.len() && (bytes[i].is_ascii_lowercase() || bytes[i] == b'*') {
            if bytes[i] == b'*' {
                i += 1;
                continue;
            }
            let v = bytes[i];
            i += 1;
            let mut e = 1u32;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                e = s[es..i].parse().ok()?;
            }
            match v {
                b'a' => exps.0 += e,
                b'b' => exps.1 += e,
                b'c' => exps.2 += e,
                _ => return None,
            }
            saw_var = true;
        }
        if i == start && !saw_var {
            return None;
        }
        coeff *= sign;
        *map.entry(exps).or_insert(0) += coeff;
    }
    Some(Polynomial::from_map(map))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "triple", rename_all = "snake_case")]
pub enum ExampleStatus {
    /// A concrete `(n, a, b, c)` printed in the cell.
    Given(Triple),
    /// `?`: no example could be found.
    QuestionMark,
    /// `!`: unexplained mark; treated like an empty cell.
    Bang,
    /// Empty cell.
    NotListed,
    /// The cell reads "a+bx+cy, Z_n", i.e. every triple.
    Generic,
}

impl ExampleStatus {
    pub fn triple(self) -> Option<Triple> {
        match self {
            ExampleStatus::Given(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    /// Table row number (S/N) and 1-based sub-row index.
    pub row: u8,
    pub sub: u8,
    pub name: &'static str,
    pub structure_kind: StructureKind,
    pub modulus_kind: ModulusKind,
    pub hypothesis: Hypothesis,
    pub condition: ConditionPredicate,
    pub example_status: ExampleStatus,
}

impl TableRow {
    pub fn label(&self) -> String {
        format!("{}.{}", self.row, self.sub)
    }

    pub fn printed_example(&self) -> Option<Triple> {
        self.example_status.triple()
    }

    /// Whether `g` lies in the row's domain: modulus kind, hypothesis and,
    /// for quasigroup rows, the quasigroup property.
    pub fn admits<T: Scalar>(&self, g: &LinearGroupoid<T>) -> bool {
        self.modulus_kind.admits(g.n().as_u64())
            && (self.structure_kind == StructureKind::Groupoid || g.is_quasigroup())
            && hypothesis_holds(&self.hypothesis, g)
    }

    pub fn condition_holds<T: Scalar>(&self, g: &LinearGroupoid<T>) -> bool {
        condition_holds(&self.condition, g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryFlag {
    /// The source text is garbled; more than one reading is cataloged.
    Ambiguous,
    /// The row exists but no defining identity is known.
    Unresolved,
}

#[derive(Debug, Clone)]
pub struct IdentityEntry {
    pub id: &'static str,
    pub name: &'static str,
    /// Number of the identity in the source listing, when it has one.
    pub number: Option<&'static str>,
    pub identity: Option<Identity>,
    pub variable_count: usize,
    pub rows: Vec<TableRow>,
    pub flag: Option<EntryFlag>,
}

impl IdentityEntry {
    pub fn text(&self) -> Option<String> {
        self.identity.as_ref().map(Identity::canonical)
    }

    pub fn row(&self, label: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.label() == label)
    }
}

pub fn catalog_entries() -> &'static [IdentityEntry] {
    static CATALOG: OnceLock<Vec<IdentityEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn entry(id: &str) -> Option<&'static IdentityEntry> {
    catalog_entries().iter().find(|e| e.id == id)
}

/// All `(entry, row)` pairs in catalog order.
pub fn table_rows() -> impl Iterator<Item = (&'static IdentityEntry, &'static TableRow)> {
    catalog_entries().iter().flat_map(|e| e.rows.iter().map(move |r| (e, r)))
}

#[derive(Serialize)]
struct RowExport<'a> {
    label: String,
    name: &'a str,
    structure_kind: StructureKind,
    modulus_kind: ModulusKind,
    hypothesis: &'a Hypothesis,
    condition: &'a str,
    congruences: Vec<&'a [Monomial]>,
    units: Vec<&'static str>,
    example: ExampleStatus,
}

#[derive(Serialize)]
struct EntryExport<'a> {
    id: &'a str,
    name: &'a str,
    number: Option<&'a str>,
    identity: Option<String>,
    variable_count: usize,
    flag: Option<EntryFlag>,
    rows: Vec<RowExport<'a>>,
}

/// Machine-readable listing of the whole catalog.
pub fn export_json() -> serde_json::Value {
    let entries: Vec<EntryExport> = catalog_entries()
        .iter()
        .map(|e| EntryExport {
            id: e.id,
            name: e.name,
            number: e.number,
            identity: e.text(),
            variable_count: e.variable_count,
            flag: e.flag,
            rows: e
                .rows
                .iter()
                .map(|r| RowExport {
                    label: r.label(),
                    name: r.name,
                    structure_kind: r.structure_kind,
                    modulus_kind: r.modulus_kind,
                    hypothesis: &r.hypothesis,
                    condition: &r.condition.text,
                    congruences: r.condition.congruences.iter().map(|p| p.terms.as_slice()).collect(),
                    units: r
                        .condition
                        .units
                        .iter()
                        .map(|u| match u {
                            Coefficient::B => "b",
                            Coefficient::C => "c",
                        })
                        .collect(),
                    example: r.example_status,
                })
                .collect(),
        })
        .collect();
    serde_json::to_value(entries).expect("catalog serializes")
}

// ---- transcription ----------------------------------------------------

use ExampleStatus::{Bang, Generic, NotListed, QuestionMark as Unknown};
use HypAtom::*;
use ModulusKind::{AnyN as N, PrimeP as P};
use StructureKind::{Groupoid as G, Quasigroup as Q};

struct RowSpec(StructureKind, ModulusKind, Vec<HypAtom>, &'static str, ExampleStatus);

fn row(s: StructureKind, m: ModulusKind, hyp: &[HypAtom], cond: &'static str, example: ExampleStatus) -> RowSpec {
    RowSpec(s, m, hyp.to_vec(), cond, example)
}

const fn ex(n: u64, a: u64, b: u64, c: u64) -> ExampleStatus {
    ExampleStatus::Given(Triple::new(n, a, b, c))
}

struct Spec {
    id: &'static str,
    name: &'static str,
    number: Option<&'static str>,
    text: Option<String>,
    row: Option<(u8, &'static str)>,
    rows: Vec<RowSpec>,
    flag: Option<EntryFlag>,
}

fn law(id: &'static str, name: &'static str, number: &'static str, text: impl Into<String>) -> Spec {
    Spec { id, name, number: Some(number), text: Some(text.into()), row: None, rows: Vec::new(), flag: None }
}

impl Spec {
    fn table(mut self, row: u8, row_name: &'static str, rows: Vec<RowSpec>) -> Self {
        self.row = Some((row, row_name));
        self.rows = rows;
        self
    }

    fn flagged(mut self, flag: EntryFlag) -> Self {
        self.flag = Some(flag);
        self
    }

    fn build(self) -> IdentityEntry {
        let identity = self.text.map(|t| parse(&t).unwrap_or_else(|e| panic!("catalog identity {}: {e}", self.id)));
        let variable_count = identity.as_ref().map_or(0, |i| i.variables().len());
        let rows = match self.row {
            None => Vec::new(),
            Some((row, name)) => self
                .rows
                .into_iter()
                .enumerate()
                .map(|(i, RowSpec(s, m, hyp, cond, example))| TableRow {
                    row,
                    sub: i as u8 + 1,
                    name,
                    structure_kind: s,
                    modulus_kind: m,
                    hypothesis: Hypothesis { atoms: hyp },
                    condition: ConditionPredicate::parse(cond)
                        .unwrap_or_else(|e| panic!("catalog row {row}.{}: {e}", i + 1)),
                    example_status: example,
                })
                .collect(),
        };
        IdentityEntry { id: self.id, name: self.name, number: self.number, identity, variable_count, rows, flag: self.flag }
    }
}

/// Two rows differing only in structure kind.
fn gq(m: ModulusKind, hyp: &[HypAtom], cond: &'static str, g: ExampleStatus, q: ExampleStatus) -> [RowSpec; 2] {
    [row(G, m, hyp, cond, g), row(Q, m, hyp, cond, q)]
}

/// The four "a+bx+cy, Z_n" rows: Z_n then Z_p, groupoid then quasigroup.
fn generic_rows() -> Vec<RowSpec> {
    vec![
        row(G, N, &[], "", Generic),
        row(Q, N, &[], "", Generic),
        row(G, P, &[], "", Generic),
        row(Q, P, &[], "", Generic),
    ]
}

fn cat(parts: impl IntoIterator<Item = impl IntoIterator<Item = RowSpec>>) -> Vec<RowSpec> {
    parts.into_iter().flatten().collect()
}

const C_RHS: [&str; 6] = ["(x*y)*(w*z)", "(y*x)*(z*w)", "(y*x)*(w*z)", "(z*w)*(x*y)", "(z*w)*(y*x)", "(w*z)*(x*y)"];
const CM_RHS: [&str; 14] = [
    "(x*z)*(w*y)",
    "(x*w)*(y*z)",
    "(x*w)*(z*y)",
    "(y*z)*(x*w)",
    "(y*z)*(w*x)",
    "(y*w)*(x*z)",
    "(y*w)*(z*x)",
    "(z*x)*(y*w)",
    "(z*x)*(w*y)",
    "(z*y)*(x*w)",
    "(z*y)*(w*x)",
    "(w*x)*(y*z)",
    "(w*x)*(z*y)",
    "(w*y)*(x*z)",
];
const C_IDS: [&str; 6] = ["c_1", "c_2", "c_3", "c_4", "c_5", "c_6"];
const CM_IDS: [&str; 14] =
    ["cm_1", "cm_2", "cm_3", "cm_4", "cm_5", "cm_6", "cm_7", "cm_8", "cm_9", "cm_10", "cm_11", "cm_12", "cm_13", "cm_14"];

fn build() -> Vec<IdentityEntry> {
    let abelian_dist = |first: ExampleStatus| {
        vec![
            row(G, N, &[BUnit, CUnit], "b=c, 2b^2=b", first),
            row(Q, N, &[BUnit, CUnit], "b=c, 2b^2=b", Unknown),
            row(G, N, &[ANonzero], "b=c, 2b^2=b", Unknown),
            row(Q, N, &[ANonzero], "b=c, 2b^2=b", Unknown),
            row(G, P, &[ANonzero], "b=c, 2b=1", ex(5, 2, 3, 3)),
            row(Q, P, &[ANonzero], "b=c, 2b=1", ex(5, 2, 3, 3)),
        ]
    };
    let rc_family = || {
        vec![
            row(G, P, &[AZero], "c=b^2=1", ex(63, 0, 8, 1)),
            row(Q, P, &[AZero], "c=b^2=1", ex(63, 0, 8, 1)),
            row(G, N, &[AZero, BUnit, CUnit], "c=b^2=1", ex(63, 0, 8, 1)),
            row(Q, N, &[AZero, BUnit, CUnit], "c=b^2=1, (b,n)=(c,n)=1", ex(63, 0, 8, 1)),
            row(G, N, &[], "b=-1, c=1", ex(6, 2, 5, 1)),
            row(Q, N, &[], "b=-1, c=1, (b,n)=(c,n)=1", ex(6, 2, 5, 1)),
        ]
    };
    let schweitzer_rows = || {
        vec![
            row(G, N, &[BUnit, CUnit], "b=1, c=-1", ex(6, 2, 1, 5)),
            row(Q, N, &[BUnit, CUnit], "b=1, c=-1, (b,n)=(c,n)=1", ex(6, 2, 1, 5)),
            row(G, P, &[ANonzero], "b=1, c=-1", ex(7, 3, 1, 6)),
            row(Q, P, &[ANonzero], "b=1, c=-1", ex(7, 3, 1, 6)),
        ]
    };
    let first_cip = |unit: &'static [HypAtom]| {
        vec![
            row(G, P, &[ANonzero], "bc=1", ex(11, 2, 3, 4)),
            row(Q, P, &[ANonzero], "bc=1", ex(11, 2, 3, 4)),
            row(G, N, unit, "bc=1", ex(8, 3, 3, 3)),
            row(Q, N, unit, "bc=1, (b,n)=(c,n)=1", ex(8, 3, 3, 3)),
        ]
    };
    let second_cip = || {
        vec![row(G, N, &[], "bc=1", ex(8, 3, 3, 3)), row(Q, N, &[], "bc=1, (b,n)=(c,n)=1", ex(8, 3, 3, 3))]
    };
    let aaip = || {
        vec![
            row(G, P, &[BcPlusBNe1], "b=c", ex(11, 2, 4, 4)),
            row(Q, P, &[BcPlusBNe1], "b=c", ex(11, 2, 4, 4)),
            row(G, P, &[BNeC], "b+bc=1", ex(5, 2, 3, 1)),
            row(Q, P, &[BNeC], "b+bc=1", ex(5, 2, 3, 1)),
        ]
    };
    let wip = |sq: HypAtom, unit: HypAtom, plus: HypAtom| -> Vec<RowSpec> {
        vec![
            row(G, P, &[AZero, sq], "bc=1", ex(7, 0, 3, 5)),
            row(Q, P, &[AZero, sq], "bc=1", ex(7, 0, 3, 5)),
            row(G, N, &[AZero, unit], "bc=1", ex(6, 0, 3, 4)),
            row(Q, N, &[AZero, unit], "bc=1, (b,n)=(c,n)=1", Unknown),
            row(G, N, &[AZero, plus], "bc=1", Unknown),
            row(Q, N, &[AZero, plus], "bc=1, (b,n)=(c,n)=1", Unknown),
        ]
    };
    let rectangle = |cond: &'static str, cond_q: &'static str, unit: &'static [HypAtom]| {
        vec![
            row(G, P, &[], cond, ex(7, 2, 4, 4)),
            row(Q, P, &[], cond, ex(7, 2, 4, 4)),
            row(G, N, unit, cond, ex(6, 2, 4, 4)),
            row(Q, N, unit, cond_q, ex(6, 2, 4, 4)),
        ]
    };
    let two_p = |cond: &'static str, example: ExampleStatus| cat([gq(P, &[ANonzero], cond, example, example)]);

    let mut specs = vec![
        law("idempotent", "idempotent law", "1", "x*x = x")
            .table(1, "Idempotent", vec![row(G, N, &[], "b+c=1, a=0", ex(6, 0, 5, 2))]),
        law("unipotent", "unipotent law", "2", "x*x = y*y").table(
            2,
            "Unipotent",
            vec![row(G, N, &[], "b+c=0", ex(6, 2, 4, 2)), row(Q, N, &[], "b+c=0, (b,n)=(c,n)=1", ex(6, 2, 5, 1))],
        ),
        law("commutative", "commutative law", "3", "x*y = y*x").table(
            3,
            "Commut",
            vec![row(G, N, &[], "b=c", ex(6, 1, 4, 4)), row(Q, N, &[], "b=c, (b,n)=(c,n)=1", ex(6, 1, 5, 5))],
        ),
        law("sade_right_keys", "Sade right keys law", "4", "(x*y)*y = x")
            .table(4, "Sade Right", cat([gq(P, &[ANonzero], "b=-1", ex(7, 2, 6, 4), ex(7, 1, 5, 4))])),
        law("sade_left_keys", "Sade left keys law", "5", "y*(y*x) = x")
            .table(5, "Sade Left", cat([gq(P, &[ANonzero], "c=-1", ex(7, 2, 4, 5), ex(7, 2, 5, 5))])),
        law("right_alternative", "right alternative law", "6", "(x*y)*y = x*(y*y)")
            .table(6, "Right Alternative", two_p("b=c=1", ex(7, 3, 1, 1))),
        law("left_alternative", "left alternative law", "7", "y*(y*x) = (y*y)*x")
            .table(7, "Left Alternative", two_p("b=c=1", ex(7, 2, 1, 1))),
        law("medial_alternative", "medial alternative law", "8", "x*(y*x) = (x*y)*x").table(
            8,
            "Medial Alternative",
            vec![
                row(G, P, &[ANonzero], "b=c", ex(7, 2, 4, 4)),
                row(G, P, &[BNeC], "b+c=1", ex(5, 2, 4, 2)),
                row(Q, P, &[ANonzero], "b=c", ex(7, 2, 4, 4)),
                row(Q, P, &[BNeC], "b+c=1", ex(7, 2, 4, 2)),
            ],
        ),
        law("right_semisymmetry", "law of right semisymmetry", "9", "x*(y*x) = y").table(
            9,
            "Right Semi Symmetry",
            vec![
                row(G, P, &[ANonzero], "b=c=-1", ex(5, 2, 4, 4)),
                row(G, N, &[AZero], "bc=1, c^2=-b", ex(9, 0, 5, 2)),
                row(Q, P, &[ANonzero], "b=c=-1", ex(5, 2, 4, 4)),
                row(Q, N, &[AZero], "bc=1, c^2=-b", ex(9, 0, 5, 2)),
            ],
        ),
        law("left_semisymmetry", "law of left semisymmetry", "10", "(x*y)*x = y").table(
            10,
            "Left Semi Symmetry",
            vec![
                row(G, P, &[ANonzero], "b=c=-1", ex(5, 3, 4, 4)),
                row(G, N, &[AZero], "b=1, b^2=-c", ex(10, 0, 1, 9)),
                row(Q, P, &[ANonzero], "b=c=-1", ex(5, 3, 4, 4)),
                row(Q, N, &[AZero], "b=1, b^2=-c", ex(10, 0, 1, 9)),
            ],
        ),
        law("stein_first", "Stein first law", "11", "x*(x*y) = y*x")
            .table(11, "Stein First", cat([gq(P, &[ANonzero], "b=c", ex(5, 3, 4, 4), ex(5, 2, 4, 4))])),
        law("stein_second", "Stein second law", "12", "x*(y*x) = (y*x)*x")
            .table(12, "Stein Second", cat([gq(P, &[ANonzero], "b=c", ex(5, 3, 4, 4), ex(5, 2, 4, 4))])),
        law("schroder_first", "Schroder first law", "13", "x*(x*y) = (x*y)*y"),
        law("schroder_second", "Schroder second law", "14", "(x*y)*(y*x) = x").table(
            13,
            "Schroder Second",
            vec![
                row(G, N, &[], "b^2+c^2=1, 2bc=0, a=0", ex(6, 0, 2, 3)),
                row(Q, N, &[], "b^2+c^2=1, 2bc=0, a=0, (b,n)=(c,n)=1", Unknown),
                row(G, P, &[ANonzero], "b+c=-1, b^2+c^2=1, 2bc=0", Unknown),
                row(Q, P, &[ANonzero], "b+c=-1, b^2+c^2=1, 2bc=0", Unknown),
            ],
        ),
        law("stein_third", "Stein third law", "15", "(x*y)*(y*x) = y").table(
            14,
            "Stein Third",
            vec![
                row(G, N, &[], "b^2+c^2=0, 2bc=1, a=0", Unknown),
                row(Q, N, &[], "(b,n)=(c,n)=1, b^2+c^2=0, 2bc=1, a=0", Unknown),
                row(G, P, &[ANonzero], "b^2+c^2=0, 2bc=1,", ex(5, 3, 2, 4)),
                row(Q, P, &[ANonzero], "b^2+c^2=0, 2bc=1,", ex(5, 2, 2, 4)),
            ],
        ),
        law("sade_right_translation", "Sade right translation law", "16", "x*y = x"),
        law("sade_left_translation", "Sade left translation law", "17", "x*y = y"),
        law("associative", "associative law", "18", "(x*y)*z = x*(y*z)")
            .table(15, "Associative", two_p("b=c=1", ex(6, 2, 1, 1))),
        Spec { id: "slim", name: "slim law", number: None, text: None, row: None, rows: Vec::new(), flag: None }
            .table(
                16,
                "Slim",
                vec![
                    row(G, N, &[AZero, CUnit], "bc=0, c=1", Bang),
                    row(Q, N, &[AZero, CUnit], "bc=0, c=1, (b,n)=(c,n)=1", Unknown),
                ],
            )
            .flagged(EntryFlag::Unresolved),
        law("cyclic_associativity", "law of cyclic associativity", "19", "x*(y*z) = z*(x*y)").table(
            17,
            "Cyclic Associativity",
            vec![row(G, N, &[], "b=c=1", ex(6, 3, 1, 1)), row(Q, N, &[], "b=c=1, (b,n)=(c,n)=1", ex(6, 3, 1, 1))],
        ),
        law("right_permutability", "law of right permutability", "20", "(x*y)*z = (x*z)*y").table(
            18,
            "Right Permutability",
            vec![row(G, N, &[], "b=1", ex(6, 1, 1, 5)), row(Q, N, &[], "b=1, (b,n)=(c,n)=1", ex(6, 1, 1, 5))],
        ),
        law("left_permutability", "law of left permutability", "21", "x*(y*z) = y*(x*z)").table(
            19,
            "Left Permutability",
            vec![row(G, N, &[], "c=1", ex(6, 1, 5, 1)), row(Q, N, &[], "c=1, (b,n)=(c,n)=1", ex(6, 3, 5, 1))],
        ),
        law("abel_grassman", "Abel-Grassman law", "22", "x*(y*z) = z*(y*x)").table(
            20,
            "Abel Grassman",
            vec![row(G, N, &[], "c^2=b", ex(6, 2, 4, 2)), row(Q, N, &[], "c^2=b, (b,n)=(c,n)=1", ex(9, 2, 4, 2))],
        ),
        law("commuting_product", "commuting product law", "23", "(x*y)*z = x*(z*y)")
            .table(21, "Commuting Product", two_p("b=c=1", ex(7, 1, 1, 1))),
        law("dual_commuting_product", "dual of commuting product", "24", "z*(y*x) = (y*z)*x")
            .table(22, "Dual Comm Product", two_p("b=c=1", ex(7, 1, 1, 1))),
        law("stein_fourth", "Stein fourth law", "25", "(x*y)*(y*z) = x*z"),
        law("right_transitivity", "law of right transitivity", "26", "(y*x)*(z*x) = y*z")
            .table(23, "Right Transitivity", two_p("b=1, c=-1", ex(7, 2, 1, 6))),
        law("left_transitivity", "law of left transitivity", "27", "(x*y)*(x*z) = y*z")
            .table(24, "Left Transitivity", two_p("b=-1, c=1", ex(7, 2, 6, 1))),
        law("schweitzer", "Schweitzer law", "28", "(x*y)*(x*z) = z*y").table(25, "Schweitzer", schweitzer_rows()),
        law("dual_schweitzer", "dual of Schweitzer law", "29", "(y*x)*(z*x) = z*y")
            .table(26, "Dual of Schweitzer", schweitzer_rows()),
        law("right_self_distributive", "law of right self-distributivity", "30", "(x*y)*z = (x*z)*(y*z)")
            .table(27, "Right Self Distributive", cat([gq(P, &[], "c=1-b, a=0", ex(7, 0, 3, 5), ex(7, 0, 3, 5))])),
        law("left_self_distributive", "law of left self-distributivity", "31", "z*(y*x) = (z*y)*(z*x)")
            .table(28, "Left Self Distributive", cat([gq(P, &[], "c=1-b, a=0", ex(7, 0, 3, 5), ex(7, 0, 3, 5))])),
        law("right_abelian_distributive", "law of right abelian distributivity", "32", "(x*y)*z = (z*x)*(y*z)")
            .table(29, "Right Abelian Distributivity", abelian_dist(Unknown)),
        law("left_abelian_distributive", "law of left abelian distributivity", "33", "z*(y*x) = (z*y)*(x*z)")
            .table(30, "Left Abelian Distributivity", abelian_dist(NotListed)),
        law("bruck_moufang", "Bruck-Moufang identity", "34", "(x*y)*(z*x) = (x*(y*z))*x").table(
            31,
            "Bol Moufang",
            vec![row(G, N, &[], "b=c=1", ex(6, 2, 1, 1)), row(Q, N, &[GcdBN1, GcdCN1], "b=c=1", ex(6, 2, 1, 1))],
        ),
        law("dual_bruck_moufang", "dual of Bruck-Moufang identity", "35", "(x*y)*(z*x) = x*((y*z)*x)")
            .table(
                32,
                "Dual Bol Moufang",
                vec![
                    row(G, N, &[], "b=c=1", ex(6, 2, 1, 1)),
                    row(Q, N, &[GcdBN1, GcdCN1], "b=c=1", ex(6, 2, 1, 1)),
                ],
            )
            .flagged(EntryFlag::Ambiguous),
        law("dual_bruck_moufang_alt", "dual of Bruck-Moufang identity (alternative reading)", "35", "(x*y)*(z*x) = x*(y*(z*x))")
            .flagged(EntryFlag::Ambiguous),
        law("moufang", "Moufang identity", "36", "((x*y)*z)*y = x*(y*(z*y))")
            .table(33, "Moufang", cat([gq(P, &[], "b=c=1, a=0", ex(5, 0, 1, 1), ex(5, 0, 1, 1))])),
        law("moufang_2", "Moufang identity (second form)", "37", "((y*z)*y)*x = y*(z*(y*x))"),
        law("r_bol", "right Bol identity", "38", "((x*y)*z)*y = x*((y*z)*y)").table(
            34,
            "R Bol",
            cat([
                gq(P, &[ANonzero], "b^2=1, b=c=1", ex(7, 2, 1, 1), ex(7, 2, 1, 1)),
                gq(P, &[Neg1NeBNeC], "b^2=1, c=1, a=0", ex(63, 0, 8, 1), ex(63, 0, 8, 1)),
            ]),
        ),
        law("l_bol", "left Bol identity", "39", "(y*(z*y))*x = y*(z*(y*x))").table(
            35,
            "L Bol",
            cat([
                gq(P, &[ANonzero], "c^2=1, b=c=1", ex(7, 2, 1, 1), ex(7, 2, 1, 1)),
                gq(P, &[Neg1NeBNeC], "c^2=1, b=1, a=0", ex(63, 0, 1, 8), ex(63, 0, 1, 8)),
            ]),
        ),
        law("extra", "extra law", "40", "((x*y)*z)*x = x*(y*(z*x))"),
        law("rc4", "RC4 law", "40.1", "((y*x)*x)*z = y*((x*x)*z)").table(36, "RC4", rc_family()),
        law("lc4", "LC4 law", "40.2", "(y*(x*x))*z = y*(x*(x*z))").table(
            37,
            "LC4",
            vec![
                row(G, P, &[AZero], "b=c^2=1", ex(63, 0, 1, 8)),
                row(Q, P, &[AZero], "b=c^2=1", ex(63, 0, 1, 8)),
                row(G, N, &[AZero, BUnit, CUnit], "b=c^2=1", ex(8, 0, 1, 3)),
                row(Q, N, &[AZero, BUnit, CUnit], "b=c^2=1, (b,n)=(c,n)=1", ex(15, 0, 1, 4)),
                row(G, N, &[], "b=-1, c=1", ex(6, 2, 5, 1)),
                row(Q, N, &[], "b=-1, c=1, (b,n)=(c,n)=1", ex(6, 2, 5, 1)),
            ],
        ),
        law("lc2", "LC2 law", "40.3", "(x*x)*(y*z) = (x*(x*y))*z"),
        law("rc1", "RC1 law", "40.4", "((y*z)*x)*x = y*((z*x)*x)").table(38, "RC1", rc_family()),
        law("lc1", "LC1 law", "40.5", "(x*(x*y))*z = x*(x*(y*z))").table(
            39,
            "LC1",
            vec![
                row(G, P, &[AZero, CNe1], "c=-1", ex(7, 0, 3, 6)),
                row(Q, P, &[AZero, CNe1], "c=-1", ex(7, 0, 3, 6)),
                row(G, N, &[AZero, CNe1, CUnit], "c=-1", ex(6, 0, 5, 5)),
                row(Q, N, &[AZero, CNe1, CUnit], "c=-1, (b,n)=(c,n)=1", ex(6, 0, 5, 5)),
            ],
        ),
        law("rc2", "RC2 law", "40.6", "(y*z)*(x*x) = y*((z*x)*x)"),
        law("lc3", "LC3 law", "40.7", "((x*x)*y)*z = x*(x*(y*z))").table(
            40,
            "LC3",
            vec![row(G, N, &[], "c=1, b=-2", ex(6, 3, 4, 1)), row(Q, N, &[], "c=1, b=-2, (b,n)=(c,n)=1", ex(7, 2, 5, 1))],
        ),
        law("rc3", "RC3 law", "40.8", "((y*z)*x)*x = y*(z*(x*x))").table(
            41,
            "RC3",
            vec![row(G, N, &[], "c=1, b=-2", ex(6, 3, 4, 1)), row(Q, N, &[], "c=1, b=-2, (b,n)=(c,n)=1", ex(7, 2, 5, 1))],
        ),
        law("c_law", "C-law", "40.9", "((y*x)*x)*z = y*(x*(x*z))").table(
            42,
            "C-Law",
            vec![
                row(G, P, &[AZero], "b=c=-1", ex(5, 0, 4, 4)),
                row(Q, P, &[AZero], "b=c=-1", ex(5, 0, 4, 4)),
                row(G, N, &[ANonzero, BNe1, BUnit, CUnit], "b=c=-1", ex(6, 3, 5, 5)),
                row(Q, N, &[ANonzero, BNe1, BUnit, CUnit], "b=c=-1, (b,n)=(c,n)=1", ex(6, 3, 5, 5)),
            ],
        ),
        law("tarski", "Tarski law", "41", "x*(y*(z*x)) = z*y"),
        law("neumann", "Neumann law", "42", "x*((y*z)*(y*x)) = z"),
        law("specialized_medial", "specialized medial law", "43", "(x*y)*(z*x) = (x*z)*(y*x)")
            .table(62, "Specialized Medial", generic_rows()),
        law("first_rectangle", "first rectangle rule", "44", "(x*y)*(z*w) = (x*w)*(z*y)")
            .table(63, "First Rectangle", rectangle("b=c", "b=c, (b,n)=(c,n)=1", &[CUnit])),
        law("second_rectangle", "second rectangle rule", "45", "(x*y)*(x*z) = (w*y)*(w*z)")
            .table(64, "Second Rectangle", rectangle("b=-c", "b=-c, (b,n)=(c,n)=1", &[BUnit])),
        law("medial", "medial law", "46", "(x*y)*(z*w) = (x*z)*(y*w)").table(61, "Medial", generic_rows()),
        law("lip", "left inverse property", "44.1", "lam(x)*(x*y) = y")
            .table(43, "LIP", two_p("c^2=b^2=bc=1", Unknown)),
        law("rip", "right inverse property", "45.1", "(y*x)*rho(x) = y")
            .table(44, "RIP", two_p("c^2=b^2=bc=1", Unknown)),
        law("r_wip", "right weak inverse property", "47", "x*rho(y*x) = rho(y)")
            .table(55, "R WIP", wip(CSqNonzero, CUnit, BcPlusBNe1)),
        law("l_wip", "left weak inverse property", "47", "lam(x*y)*x = lam(y)")
            .table(56, "L WIP", wip(BSqNonzero, BUnit, BcPlusCNe1)),
        law("cip_r1", "first right cross inverse property", "48", "(x*y)*rho(x) = y")
            .table(45, "1st Right CIP", first_cip(&[ANonzero, CUnit])),
        law("cip_r2", "second right cross inverse property", "48", "x*(y*rho(x)) = y")
            .table(46, "2nd Right CIP", second_cip()),
        law("cip_l1", "first left cross inverse property", "48", "lam(x)*(y*x) = y")
            .table(47, "1st Left CIP", first_cip(&[ANonzero, BUnit])),
        law("cip_l2", "second left cross inverse property", "48", "(lam(x)*y)*x = y")
            .table(48, "2nd Left CIP", second_cip()),
        law("r_aip", "right automorphic inverse property", "49", "rho(x*y) = rho(x)*rho(y)")
            .table(51, "R AIP", generic_rows()),
        law("l_aip", "left automorphic inverse property", "49", "lam(x*y) = lam(x)*lam(y)")
            .table(52, "L AIP", generic_rows()),
        law("r_aaip", "right anti-automorphic inverse property", "50", "rho(x*y) = rho(y)*rho(x)")
            .table(49, "R AAIP", aaip()),
        law("l_aaip", "left anti-automorphic inverse property", "50", "lam(x*y) = lam(y)*lam(x)")
            .table(50, "L AAIP", aaip()),
        law("r_saip", "right semi-automorphic inverse property", "51", "rho((x*y)*x) = (rho(x)*rho(y))*rho(x)")
            .table(53, "R SAIP", generic_rows()),
        law("l_saip", "left semi-automorphic inverse property", "51", "lam((x*y)*x) = (lam(x)*lam(y))*lam(x)")
            .table(54, "L SAIP", generic_rows()),
        law("left_semimedial", "left semimedial law", "54", "(x*x)*(y*z) = (x*y)*(x*z)"),
        law("right_semimedial", "right semimedial law", "55", "(z*y)*(x*x) = (z*x)*(y*z)").flagged(EntryFlag::Ambiguous),
        law("right_semimedial_corrected", "right semimedial law (corrected reading)", "55", "(z*y)*(x*x) = (z*x)*(y*x)")
            .flagged(EntryFlag::Ambiguous),
        law("external_medial", "external medial law", "56", "(x*y)*(z*w) = (w*y)*(z*x)"),
        law("palindromic", "palindromic law", "56.1", "(x*y)*(z*w) = (w*z)*(y*x)"),
        law("left_f", "left F-law", "57", r"x*(y*z) = (x*y)*((x\x)*z)").table(60, "Left F", generic_rows()),
        law("right_f", "right F-law", "58", "(z*y)*x = (z*(x/x))*(y*x)").table(59, "Right F", generic_rows()),
        law("e_l", "E_l law", "57.1", "x*(y*z) = (el(x)*y)*(x*z)").table(57, "E_l", generic_rows()),
        law("e_r", "E_r law", "58.1", "(z*y)*x = (z*x)*(y*er(x))").table(58, "E_r", generic_rows()),
    ];

    const C_NUMBERS: [&str; 6] = ["56.2", "56.3", "56.4", "56.5", "56.6", "56.7"];
    const CM_NUMBERS: [&str; 14] =
        ["56.8", "56.9", "56.10", "56.11", "56.12", "56.13", "56.14", "56.15", "56.16", "56.17", "56.18", "56.19", "56.20", "56.21"];
    const C_NAMES: [&str; 6] = ["C1 law", "C2 law", "C3 law", "C4 law", "C5 law", "C6 law"];
    const CM_NAMES: [&str; 14] = [
        "CM1 law", "CM2 law", "CM3 law", "CM4 law", "CM5 law", "CM6 law", "CM7 law", "CM8 law", "CM9 law", "CM10 law", "CM11 law",
        "CM12 law", "CM13 law", "CM14 law",
    ];
    for i in 0..6 {
        let text = format!("(x*y)*(z*w) = {}", C_RHS[i]);
        specs.push(law(C_IDS[i], C_NAMES[i], C_NUMBERS[i], text).table(65, "C_i", vec![row(Q, P, &[], "b=c", ex(7, 3, 5, 5))]));
    }
    for i in 0..14 {
        let text = format!("(x*y)*(z*w) = {}", CM_RHS[i]);
        specs.push(
            law(CM_IDS[i], CM_NAMES[i], CM_NUMBERS[i], text)
                .table(66, "CM_i", vec![row(Q, P, &[BNeNegC], "b=c", ex(7, 3, 5, 5))]),
        );
    }

    specs.into_iter().map(Spec::build).collect()
}
