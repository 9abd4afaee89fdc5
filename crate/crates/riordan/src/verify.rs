//! The built-in example suite behind `riordan verify`: every displayed
//! matrix, closed form, and parameter list this crate's algebra is
//! expected to reproduce, runnable as named pass/fail checks.
//!
//! Checks are self-contained (the sequence-identification check uses an
//! embedded fixture, not an external file) and exact: a check passes only
//! on coefficient-for-coefficient equality.

use std::path::Path;

use num::One;

use crate::antecedent::{horizontal_antecedent, vertical_antecedent};
use crate::array::{RiordanArray, TriangleMatrix};
use crate::expr::parse_eval;
use crate::halves::{
    decompose, horizontal_half, horizontal_half_oracle, pairs_agree, phi_of,
    vertical_half, vertical_half_oracle, vertical_inverse_closed,
    vertical_pseudo_involution_test,
};
use crate::identify::SequenceDb;
use crate::moments::{hankel_transform, jfraction, jfraction_reconstruct};
use crate::rational::{self, Rat};
use crate::series::Series;

/// One named check and whether it reproduced its expected values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
}

type Check = Result<bool, Box<dyn std::error::Error>>;

fn series(text: &str, n: usize) -> Result<Series, Box<dyn std::error::Error>> {
    Ok(parse_eval(text, n)?)
}

fn pair(g: &str, f: &str, n: usize) -> Result<RiordanArray, Box<dyn std::error::Error>> {
    Ok(RiordanArray::new(parse_eval(g, n)?, parse_eval(f, n)?)?)
}

fn rows_are(matrix: &TriangleMatrix, expected: &[&[&str]]) -> bool {
    if matrix.nrows() < expected.len() {
        return false;
    }
    expected.iter().enumerate().all(|(n, row)| {
        let want: Option<Vec<Rat>> = row.iter().map(|s| rational::parse(s)).collect();
        want.is_some_and(|want| matrix.rows()[n] == want)
    })
}

fn prefix_is(series: &Series, expected: &[&str]) -> bool {
    if series.precision() < expected.len() {
        return false;
    }
    expected.iter().enumerate().all(|(i, s)| {
        rational::parse(s).is_some_and(|want| series.coeffs()[i] == want)
    })
}

// ---- triangle displays ----

fn pascal_rows() -> Check {
    let m = pair("1/(1-x)", "x/(1-x)", 8)?.expand(5)?;
    Ok(rows_are(
        &m,
        &[
            &["1"],
            &["1", "1"],
            &["1", "2", "1"],
            &["1", "3", "3", "1"],
            &["1", "4", "6", "4", "1"],
        ],
    ))
}

fn running_example_rows() -> Check {
    let m = pair("1/(1-x)", "x*(1+x)/(1-x)", 8)?.expand(5)?;
    Ok(rows_are(
        &m,
        &[
            &["1"],
            &["1", "1"],
            &["1", "3", "1"],
            &["1", "5", "5", "1"],
            &["1", "7", "13", "7", "1"],
        ],
    ))
}

fn fibonacci_rows() -> Check {
    let m = pair("1/(1-x-x^2)", "x/(1-x-x^2)", 8)?.expand(5)?;
    Ok(rows_are(
        &m,
        &[
            &["1"],
            &["1", "1"],
            &["2", "2", "1"],
            &["3", "5", "3", "1"],
            &["5", "10", "9", "4", "1"],
        ],
    ))
}

fn pascal_inverse_rows() -> Check {
    let inv = pair("1/(1-x)", "x/(1-x)", 8)?.inverse()?;
    let closed = pair("1/(1+x)", "x/(1+x)", 8)?;
    Ok(pairs_agree(&inv, &closed)
        && rows_are(
            &inv.expand(3)?,
            &[&["1"], &["-1", "1"], &["1", "-2", "1"]],
        ))
}

// ---- halves of the running example ----

fn running_example_vertical() -> Check {
    let v = vertical_half(&pair("1/(1-x)", "x*(1+x)/(1-x)", 16)?)?;
    Ok(rows_are(
        &v.expand(5)?,
        &[
            &["1"],
            &["3", "1"],
            &["13", "5", "1"],
            &["63", "25", "7", "1"],
            &["321", "129", "41", "9", "1"],
        ],
    ))
}

fn running_example_horizontal() -> Check {
    let h = horizontal_half(&pair("1/(1-x)", "x*(1+x)/(1-x)", 16)?)?;
    Ok(rows_are(
        &h.expand(5)?,
        &[
            &["1"],
            &["3", "1"],
            &["13", "7", "1"],
            &["63", "41", "11", "1"],
            &["321", "231", "85", "15", "1"],
        ],
    ))
}

fn running_example_vertical_closed_form() -> Check {
    let v = vertical_half(&pair("1/(1-x)", "x*(1+x)/(1-x)", 16)?)?;
    let delannoy = series("1/sqrt(1-6*x+x^2)", 14)?;
    let schroeder = series("x*(1-x)/(1+x)", 14)?.revert()?;
    Ok(v.g().agrees_with(&delannoy) && v.f().agrees_with(&schroeder))
}

fn running_example_quotient() -> Check {
    let r = pair("1/(1-x)", "x*(1+x)/(1-x)", 16)?;
    let v = vertical_half(&r)?;
    let h = horizontal_half(&r)?;
    let quotient = v.inverse()?.multiply(&h)?;
    let associated = RiordanArray::new(Series::one(r.precision()), r.f().clone())?;
    Ok(pairs_agree(&quotient, &associated)
        && rows_are(
            &quotient.expand(5)?,
            &[
                &["1"],
                &["0", "1"],
                &["0", "2", "1"],
                &["0", "2", "4", "1"],
                &["0", "2", "8", "6", "1"],
            ],
        ))
}

fn half_index_extraction() -> Check {
    let r = pair("1/(1-x)", "x*(1+x)/(1-x)", 16)?;
    let t = r.expand(9)?;
    let v = vertical_half_oracle(&t, 5)?;
    let h = horizontal_half_oracle(&t, 5)?;
    Ok(v == vertical_half(&r)?.expand(5)?
        && h == horizontal_half(&r)?.expand(5)?
        && v.entry(1, 0) == t.entry(2, 1)
        && v.entry(1, 0) == rational::int(3)
        && h.entry(2, 1) == t.entry(4, 3)
        && h.entry(2, 1) == rational::int(7))
}

// ---- halves of the Catalan array ----

fn catalan_vertical() -> Check {
    let v = vertical_half(&pair("1", "x*catalan(x)", 16)?)?;
    Ok(rows_are(
        &v.expand(5)?,
        &[
            &["1"],
            &["1", "1"],
            &["5", "2", "1"],
            &["28", "9", "3", "1"],
            &["165", "48", "14", "4", "1"],
        ],
    ))
}

fn catalan_horizontal() -> Check {
    let h = horizontal_half(&pair("1", "x*catalan(x)", 16)?)?;
    Ok(rows_are(
        &h.expand(5)?,
        &[
            &["1"],
            &["1", "1"],
            &["5", "3", "1"],
            &["28", "14", "5", "1"],
            &["165", "75", "27", "7", "1"],
        ],
    ))
}

// ---- factorizations, inverses, pseudo-involutions ----

fn pascal_from_vertical_half() -> Check {
    let v = vertical_half(&pair("1", "x*(1+x)", 16)?)?;
    Ok(pairs_agree(&v, &pair("1/(1-x)", "x/(1-x)", 14)?))
}

fn factor_identities() -> Check {
    let d = decompose(&pair("1/(1-x)", "x*(1+x)/(1-x)", 16)?)?;
    Ok(d.identities()?.iter().all(|(_, ok)| *ok))
}

fn pascal_inverse_closed_form() -> Check {
    let f = series("x*(1+x)", 16)?;
    let closed = vertical_inverse_closed(&f)?;
    let v = vertical_half(&pair("1", "x*(1+x)", 16)?)?;
    Ok(pairs_agree(&closed, &v.inverse()?)
        && pairs_agree(&closed, &pair("1/(1+x)", "x/(1+x)", 13)?))
}

fn pascal_pseudo_involution() -> Check {
    Ok(pair("1/(1-x)", "x/(1-x)", 12)?.is_pseudo_involution()?)
}

fn vertical_pseudo_involution() -> Check {
    Ok(vertical_pseudo_involution_test(&series("x*(1+x)", 12)?)?)
}

// ---- central series ----

fn schroeder_phi() -> Check {
    let f = series("x*(1+x)/(1-x)", 16)?;
    let phi = phi_of(&f)?;
    let one = Series::one(phi.precision());
    let x = Series::x(phi.precision());
    // phi (1 - phi) / (1 + phi) = x, the large Schroeder equation
    let lhs = phi.mul(&one.sub(&phi)).div(&one.add(&phi))?;
    Ok(prefix_is(&phi, &["0", "1", "2", "6", "22", "90", "394", "1806"])
        && lhs.agrees_with(&x))
}

fn catalan_reversion() -> Check {
    let reverted = series("x-x^2", 14)?.revert()?;
    Ok(reverted.agrees_with(&series("x*catalan(x)", 14)?))
}

fn central_delannoy_expansion() -> Check {
    let g = series("1/sqrt(1-6*x+x^2)", 10)?;
    Ok(prefix_is(&g, &["1", "3", "13", "63", "321", "1683", "8989", "48639"]))
}

// ---- antecedents ----

fn vertical_antecedent_running() -> Check {
    let result =
        vertical_antecedent(&series("1/(1-x)", 14)?, &series("x*(1+x)/(1-x)", 14)?)?;
    let g = series("(1+x+sqrt(1+6*x+x^2))/(2*sqrt(1+6*x+x^2))", 12)?;
    let f = series("x*(1+x+sqrt(1+6*x+x^2))/2", 12)?;
    Ok(result.antecedent.g().agrees_with(&g)
        && result.antecedent.f().agrees_with(&f)
        && rows_are(
            &result.antecedent.expand(4)?,
            &[&["1"], &["-1", "1"], &["5", "1", "1"], &["-25", "1", "3", "1"]],
        ))
}

fn catalan_triangle_vertical_antecedent() -> Check {
    let result =
        vertical_antecedent(&series("catalan(x)", 14)?, &series("x*catalan(x)", 14)?)?;
    Ok(pairs_agree(&result.antecedent, &pair("(1-2*x)/(1-x)^2", "x/(1-x)", 12)?)
        && rows_are(
            &result.antecedent.expand(4)?,
            &[&["1"], &["0", "1"], &["-1", "1", "1"], &["-2", "0", "2", "1"]],
        ))
}

fn horizontal_antecedent_pascal() -> Check {
    let result = horizontal_antecedent(&series("1/(1-x)", 16)?, &series("x/(1-x)", 16)?)?;
    let inverse = result.antecedent.inverse()?;
    Ok(rows_are(
        &result.antecedent.expand(5)?,
        &[
            &["1"],
            &["1/2", "1"],
            &["0", "1", "1"],
            &["-1/16", "3/8", "3/2", "1"],
            &["0", "0", "1", "2", "1"],
        ],
    ) && inverse.g().agrees_with(&series("(2+x)/(2*(1+x))", 12)?)
        && inverse.f().agrees_with(&series("x/sqrt(1+x)", 12)?))
}

fn horizontal_antecedent_a085478() -> Check {
    let result = horizontal_antecedent(&series("1/(1-x)", 14)?, &series("x/(1-x)^2", 14)?)?;
    Ok(pairs_agree(&result.antecedent, &pair("1", "x*(1+x)", 12)?))
}

fn catalan_horizontal_antecedent() -> Check {
    let result =
        horizontal_antecedent(&series("catalan(x)", 18)?, &series("x*catalan(x)", 18)?)?;
    let closed = pair("(2-5*x+3*x^2)/(2-4*x)", "x*sqrt(1-x)", 16)?.inverse()?;
    Ok(pairs_agree(&result.antecedent, &closed)
        && rows_are(
            &result.antecedent.expand(4)?,
            &[
                &["1"],
                &["1/2", "1"],
                &["0", "1", "1"],
                &["-21/16", "7/8", "3/2", "1"],
            ],
        ))
}

fn fibonacci_horizontal_antecedent() -> Check {
    let result =
        horizontal_antecedent(&series("1/(1-x-x^2)", 16)?, &series("x/(1-x-x^2)", 16)?)?;
    Ok(prefix_is(
        result.antecedent.g(),
        &["1", "1/2", "0", "-5/16", "0", "75/256", "0", "-625/2048", "0", "21875/65536"],
    ) && result.antecedent.f().agrees_with(&series("(x^2+x*sqrt(4+5*x^2))/2", 13)?))
}

// ---- moments of the Fibonacci antecedent ----

fn fibonacci_antecedent_g() -> Result<Series, Box<dyn std::error::Error>> {
    let result =
        horizontal_antecedent(&series("1/(1-x-x^2)", 16)?, &series("x/(1-x-x^2)", 16)?)?;
    Ok(result.antecedent.g().clone())
}

fn fibonacci_hankel() -> Check {
    let g = fibonacci_antecedent_g()?;
    let h = hankel_transform(&g.coeffs()[..13], 6)?;
    Ok((0..=6).all(|n: usize| {
        let sign = if (n * (n + 1) / 2).is_multiple_of(2) { 1 } else { -1 };
        let value = rational::int(sign)
            * Rat::from_integer(5.into()).pow(2 * (n * n / 4) as i32)
            / Rat::from_integer(4.into()).pow((n * n) as i32);
        h.h()[n] == value
    }))
}

fn fibonacci_jfraction() -> Check {
    let jf = jfraction(&fibonacci_antecedent_g()?, 6)?;
    let b: Option<Vec<Rat>> =
        ["1/2", "3/4", "-1", "1", "-1", "1"].iter().map(|s| rational::parse(s)).collect();
    let lam: Option<Vec<Rat>> = ["-1/4", "-25/16", "-1/16", "-25/16", "-1/16"]
        .iter()
        .map(|s| rational::parse(s))
        .collect();
    Ok(jf.b() == b.unwrap() && jf.lam()[..5] == lam.unwrap())
}

fn fibonacci_jfraction_roundtrip() -> Check {
    let g = fibonacci_antecedent_g()?;
    let back = jfraction_reconstruct(&jfraction(&g, 6)?, 13);
    Ok(back.agrees_with(&g.truncate(13)))
}

// ---- sequence identification ----

const EMBEDDED_FIXTURE: &str = "\
A000045 ,0,1,1,2,3,5,8,13,21,34,55,89,144,
A000108 ,1,1,2,5,14,42,132,429,1430,4862,
A001850 ,1,3,13,63,321,1683,8989,48639,265729,1462563,
";

fn identify_delannoy() -> Check {
    let db = SequenceDb::from_reader(EMBEDDED_FIXTURE.as_bytes(), Path::new("<built-in>"))?;
    let v = vertical_half(&pair("1/(1-x)", "x*(1+x)/(1-x)", 16)?)?;
    let column: Vec<Rat> = v.g().coeffs()[..8].to_vec();
    let result = db.identify(&column, 6);
    Ok(result.matches.len() == 1
        && result.matches[0].id() == "A001850"
        && result.matches[0].offset == 0
        && column.iter().all(|r| r.denom().is_one()))
}

type NamedCheck = (&'static str, fn() -> Check);

/// Run every named check, in declaration order.
pub fn run_all() -> Vec<CheckOutcome> {
    let checks: Vec<NamedCheck> = vec![
        ("pascal-rows", pascal_rows),
        ("running-example-rows", running_example_rows),
        ("fibonacci-rows", fibonacci_rows),
        ("pascal-inverse-rows", pascal_inverse_rows),
        ("running-example-vertical", running_example_vertical),
        ("running-example-horizontal", running_example_horizontal),
        ("running-example-vertical-closed-form", running_example_vertical_closed_form),
        ("running-example-quotient", running_example_quotient),
        ("half-index-extraction", half_index_extraction),
        ("catalan-vertical", catalan_vertical),
        ("catalan-horizontal", catalan_horizontal),
        ("pascal-from-vertical-half", pascal_from_vertical_half),
        ("factor-identities", factor_identities),
        ("pascal-inverse-closed-form", pascal_inverse_closed_form),
        ("pascal-pseudo-involution", pascal_pseudo_involution),
        ("vertical-pseudo-involution", vertical_pseudo_involution),
        ("schroeder-phi", schroeder_phi),
        ("catalan-reversion", catalan_reversion),
        ("central-delannoy-expansion", central_delannoy_expansion),
        ("vertical-antecedent-running", vertical_antecedent_running),
        ("catalan-triangle-vertical-antecedent", catalan_triangle_vertical_antecedent),
        ("horizontal-antecedent-pascal", horizontal_antecedent_pascal),
        ("horizontal-antecedent-a085478", horizontal_antecedent_a085478),
        ("catalan-horizontal-antecedent", catalan_horizontal_antecedent),
        ("fibonacci-horizontal-antecedent", fibonacci_horizontal_antecedent),
        ("fibonacci-hankel", fibonacci_hankel),
        ("fibonacci-jfraction", fibonacci_jfraction),
        ("fibonacci-jfraction-roundtrip", fibonacci_jfraction_roundtrip),
        ("identify-delannoy", identify_delannoy),
    ];
    checks
        .into_iter()
        .map(|(name, check)| CheckOutcome { name, passed: check().unwrap_or(false) })
        .collect()
}
