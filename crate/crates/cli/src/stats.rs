use serde::Serialize;
use sumprod_core::energy::{additive_energy, cubic_energy, multiplicative_energy};
use sumprod_core::hp::Precision;
use sumprod_core::setcalc::arithmetic_set;
use sumprod_core::verifier::theorem_report;
use sumprod_core::{ElementSet, Op};

pub const CSV_HEADER: [&str; 13] = [
    "familySpec",
    "|A|",
    "|A+A|",
    "|A-A|",
    "|A.A|",
    "|A:A|",
    "E",
    "E_*",
    "E_3",
    "exponentDiffRatio",
    "exponentSumRatio",
    "exponentDiffProduct",
    "exponentSumProduct",
];

/// Sizes and energies of one set. Multiplicative fields are absent when
/// `0 ∈ A`; exponents also need `|A| ≥ 2`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StatsRow {
    pub family_spec: String,
    pub field: &'static str,
    pub set_size: usize,
    pub sum_set_size: usize,
    pub difference_set_size: usize,
    pub product_set_size: Option<usize>,
    pub ratio_set_size: Option<usize>,
    pub additive_energy: u128,
    pub multiplicative_energy: Option<u128>,
    pub cubic_energy: u128,
    /// `log(|A±A| + |A:A| or |A·A|)/log|A|`, keyed diffRatio, sumRatio,
    /// diffProduct, sumProduct.
    pub exponents: Option<Exponents>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Exponents {
    pub diff_ratio: String,
    pub sum_ratio: String,
    pub diff_product: String,
    pub sum_product: String,
}

fn size(a: &ElementSet, op: Op) -> Option<usize> {
    arithmetic_set(a, a, op).ok().map(|s| s.len())
}

pub fn stats_row(source: &str, a: &ElementSet, hp: Precision) -> StatsRow {
    let exponents = theorem_report(a, hp).ok().map(|r| Exponents {
        diff_ratio: r[0].lhs.clone(),
        sum_ratio: r[1].lhs.clone(),
        diff_product: r[2].lhs.clone(),
        sum_product: r[3].lhs.clone(),
    });
    StatsRow {
        family_spec: source.to_string(),
        field: match a.field() {
            sumprod_core::Field::Real => "real",
            sumprod_core::Field::Complex => "complex",
        },
        set_size: a.len(),
        sum_set_size: size(a, Op::Sum).expect("sums never fail"),
        difference_set_size: size(a, Op::Diff).expect("differences never fail"),
        product_set_size: (!a.contains_zero()).then(|| size(a, Op::Prod)).flatten(),
        ratio_set_size: size(a, Op::Ratio),
        additive_energy: additive_energy(a, a).as_u128(),
        multiplicative_energy: multiplicative_energy(a).ok().map(|e| e.as_u128()),
        cubic_energy: cubic_energy(a).as_u128(),
        exponents,
    }
}

impl StatsRow {
    pub fn csv_record(&self) -> Vec<String> {
        let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
        let e = self.exponents.as_ref();
        let exp = |f: fn(&Exponents) -> &String| e.map_or(String::new(), |x| f(x).clone());
        vec![
            self.family_spec.clone(),
            self.set_size.to_string(),
            self.sum_set_size.to_string(),
            self.difference_set_size.to_string(),
            opt(self.product_set_size),
            opt(self.ratio_set_size),
            self.additive_energy.to_string(),
            self.multiplicative_energy.map_or(String::new(), |v| v.to_string()),
            self.cubic_energy.to_string(),
            exp(|x| &x.diff_ratio),
            exp(|x| &x.sum_ratio),
            exp(|x| &x.diff_product),
            exp(|x| &x.sum_product),
        ]
    }
}
