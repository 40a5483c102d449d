//! Random instance text for the integration tests.
//!
//! Bounds: at most 3 variables, generator exponents at most 3, at most 3
//! ideal generators, at most 2 module summands, rank at most 3.

#![allow(dead_code)]

use mlcoh::instance_io::Instance;
use rand::seq::SliceRandom;
use rand::Rng;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn monomial<R: Rng>(rng: &mut R, nvars: usize, allow_one: bool) -> String {
    loop {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=3)).collect();
        if !allow_one && exps.iter().all(|&e| e == 0) {
            continue;
        }
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { NAMES[j].to_string() } else { format!("{}^{e}", NAMES[j]) })
            .collect();
        return if parts.is_empty() { "1".into() } else { parts.join("*") };
    }
}

fn generators<R: Rng>(rng: &mut R, nvars: usize, max: usize) -> String {
    let k = rng.gen_range(1..=max);
    (0..k).map(|_| monomial(rng, nvars, false)).collect::<Vec<_>>().join(", ")
}

fn summand<R: Rng>(rng: &mut R, nvars: usize) -> String {
    let shift: Vec<String> = (0..nvars).map(|_| rng.gen_range(-2..=2).to_string()).collect();
    let twist = if shift.iter().all(|s| s == "0") { String::new() } else { format!("({})", shift.join(",")) };
    if rng.gen_bool(0.3) {
        format!("S{twist}")
    } else {
        format!("S{twist}/({})", generators(rng, nvars, 2))
    }
}

/// Instance text with ideals `b1..b3` and modules `M1`, `M2`, both with
/// one or two summands.
pub fn instance_text<R: Rng>(rng: &mut R) -> String {
    let nvars = rng.gen_range(1..=3);
    let rank = rng.gen_range(1..=nvars);
    // Every color is used at least once.
    let mut colors: Vec<usize> = (1..=rank).collect();
    while colors.len() < nvars {
        colors.push(rng.gen_range(1..=rank));
    }
    colors.shuffle(rng);
    let field = if rng.gen_bool(0.2) { "GF(3)" } else { "QQ" };
    let color_list: Vec<String> = colors.iter().map(ToString::to_string).collect();
    let mut text = format!(
        "[ring]\nvariables = {}\ncolors = {}\nrank = {rank}\nfield = {field}\n\n[ideals]\n",
        NAMES[..nvars].join(", "),
        color_list.join(", ")
    );
    for k in 1..=3 {
        text.push_str(&format!("b{k} = {}\n", generators(rng, nvars, 3)));
    }
    text.push_str("\n[modules]\n");
    for k in 1..=2 {
        let summands: Vec<String> = (0..rng.gen_range(1..=2)).map(|_| summand(rng, nvars)).collect();
        text.push_str(&format!("M{k} = {}\n", summands.join(" + ")));
    }
    text
}

pub fn instance<R: Rng>(rng: &mut R) -> Instance {
    let text = instance_text(rng);
    Instance::parse(&text).unwrap_or_else(|e| panic!("generated instance fails to parse: {e}\n{text}"))
}
