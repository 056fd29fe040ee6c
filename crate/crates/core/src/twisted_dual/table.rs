//! The list of worked examples: for each family and each `N`, the computed
//! `Ǧ_N` against the stated answer.

use serde::Serialize;

use super::identity::{identify_weight_datum, GroupIdentity};
use super::TwistedDualDatum;
use crate::error::Result;
use crate::root_data::{CartanType, Isogeny, RootDatum};

/// A group `G` together with the stated twisted dual for every `N`.
#[derive(Clone, Copy, Debug)]
pub struct TableFamily {
    pub group: &'static str,
    pub cartan_type: &'static str,
    pub isogeny: &'static str,
    /// `(name, type, isogeny)` of the stated `Ǧ_N`.
    pub expected: fn(i64) -> (&'static str, &'static str, &'static str),
}

fn sl2(n: i64) -> (&'static str, &'static str, &'static str) {
    if n % 2 == 0 { ("SL2", "A1", "sc") } else { ("PSL2", "A1", "adjoint") }
}

fn psl2(n: i64) -> (&'static str, &'static str, &'static str) {
    if n % 2 == 1 { ("SL2", "A1", "sc") } else { ("PSL2", "A1", "adjoint") }
}

fn sp4(n: i64) -> (&'static str, &'static str, &'static str) {
    if n % 2 == 1 { ("SO5", "B2", "adjoint") } else { ("Sp4", "C2", "sc") }
}

fn sp6(n: i64) -> (&'static str, &'static str, &'static str) {
    if n % 2 == 1 { ("SO7", "B3", "adjoint") } else { ("Sp6", "C3", "sc") }
}

fn spin(rank: i64, n: i64, names: [&'static str; 3], c: &'static str, b: &'static str) -> (&'static str, &'static str, &'static str) {
    if n % 2 == 1 {
        (names[0], c, "adjoint")
    } else if (rank * n / 2) % 2 == 0 {
        (names[1], b, "sc")
    } else {
        (names[2], b, "adjoint")
    }
}

fn spin5(n: i64) -> (&'static str, &'static str, &'static str) {
    spin(2, n, ["PSp4", "Spin5", "SO5"], "C2", "B2")
}

fn spin7(n: i64) -> (&'static str, &'static str, &'static str) {
    spin(3, n, ["PSp6", "Spin7", "SO7"], "C3", "B3")
}

fn spin9(n: i64) -> (&'static str, &'static str, &'static str) {
    spin(4, n, ["PSp8", "Spin9", "SO9"], "C4", "B4")
}

fn g2(_: i64) -> (&'static str, &'static str, &'static str) {
    ("G2", "G2", "sc")
}

fn f4(_: i64) -> (&'static str, &'static str, &'static str) {
    ("F4", "F4", "sc")
}

fn e8(_: i64) -> (&'static str, &'static str, &'static str) {
    ("E8", "E8", "sc")
}

fn e6(n: i64) -> (&'static str, &'static str, &'static str) {
    if n % 3 == 0 { ("E6 simply-connected", "E6", "sc") } else { ("E6 adjoint", "E6", "adjoint") }
}

fn e7(n: i64) -> (&'static str, &'static str, &'static str) {
    if n % 2 == 0 { ("E7 simply-connected", "E7", "sc") } else { ("E7 adjoint", "E7", "adjoint") }
}

pub const TABLE_FAMILIES: &[TableFamily] = &[
    TableFamily { group: "SL2", cartan_type: "A1", isogeny: "sc", expected: sl2 },
    TableFamily { group: "PSL2", cartan_type: "A1", isogeny: "adjoint", expected: psl2 },
    TableFamily { group: "Sp4", cartan_type: "C2", isogeny: "sc", expected: sp4 },
    TableFamily { group: "Sp6", cartan_type: "C3", isogeny: "sc", expected: sp6 },
    TableFamily { group: "Spin5", cartan_type: "B2", isogeny: "sc", expected: spin5 },
    TableFamily { group: "Spin7", cartan_type: "B3", isogeny: "sc", expected: spin7 },
    TableFamily { group: "Spin9", cartan_type: "B4", isogeny: "sc", expected: spin9 },
    TableFamily { group: "G2", cartan_type: "G2", isogeny: "sc", expected: g2 },
    TableFamily { group: "F4", cartan_type: "F4", isogeny: "sc", expected: f4 },
    TableFamily { group: "E8", cartan_type: "E8", isogeny: "sc", expected: e8 },
    TableFamily { group: "E6", cartan_type: "E6", isogeny: "sc", expected: e6 },
    TableFamily { group: "E7", cartan_type: "E7", isogeny: "sc", expected: e7 },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub group: String,
    pub isogeny: String,
    #[serde(rename = "N")]
    pub n: i64,
    pub dual: GroupIdentity,
    pub expected_name: String,
    pub expected: GroupIdentity,
    pub pass: bool,
}

impl TableRow {
    /// `group  isogeny  N  dual  expected  verdict`, tab separated.
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.group,
            self.isogeny,
            self.n,
            self.dual,
            self.expected_name,
            if self.pass { "pass" } else { "fail" }
        )
    }
}

/// Identity of the stated dual for `family` at `n`.
pub fn expected_dual(family: &TableFamily, n: i64) -> Result<(String, GroupIdentity)> {
    let (name, t, iso) = (family.expected)(n);
    let datum = RootDatum::new(t.parse::<CartanType>()?, iso.parse::<Isogeny>()?)?;
    Ok((name.to_string(), identify_weight_datum(&datum.weight_datum())?))
}

/// One row of the table.
pub fn table_row(family: &TableFamily, n: i64) -> Result<TableRow> {
    let source = RootDatum::new(family.cartan_type.parse()?, family.isogeny.parse()?)?;
    let dual = TwistedDualDatum::new(&source, n)?.identify()?;
    let (expected_name, expected) = expected_dual(family, n)?;
    let pass = dual == expected;
    Ok(TableRow { group: family.group.to_string(), isogeny: family.isogeny.to_string(), n, dual, expected_name, expected, pass })
}

/// All rows for `N = 1..=n_max`, family by family.
pub fn examples_table(n_max: i64) -> Result<Vec<TableRow>> {
    if n_max < 1 {
        return Err(crate::Error::NonPositiveModulus(n_max));
    }
    let mut rows = Vec::new();
    for f in TABLE_FAMILIES {
        for n in 1..=n_max {
            rows.push(table_row(f, n)?);
        }
    }
    Ok(rows)
}
