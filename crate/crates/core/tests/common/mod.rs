//! Independent oracles shared by the integration tests: a second
//! transcription of the catalogs and the orthogonality table, a clause
//! checker, a DPLL solver and a brute-force colorer.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// Ray components in the printed notation: `-` negates the next digit and
/// `2` stands for √2.
pub const PERES_TEXT: &str = "100 010 001 011 01-1 101 10-1 1-10 110 2-11 211 2-1-1 21-1 -121 121 -12-1 12-1 112 \
     -112 1-12 -1-12 102 -120 120 -102 012 2-10 210 0-12 021 201 20-1 02-1";

pub const PENROSE_TEXT: &str = "100,-100 010,0-10 001,00-1 011,0-1-1 01-1,0-11 101,-10-1 10-1,-101 110,-1-10 \
     1-10,-110 011,011 01-1,01-1 0-11,0-11 0-1-1,0-1-1 101,101 10-1,10-1 -101,-101 -10-1,-10-1 110,110 \
     1-10,1-10 -110,-110 -1-10,-1-10 011,01-1 011,0-11 0-1-1,01-1 0-1-1,0-11 101,10-1 101,-101 -10-1,10-1 \
     -10-1,-101 110,1-10 110,-110 -1-10,1-10 -1-10,-110";

pub const TRIADS_TEXT: &str = "1 2 3, 1 4 5, 1 26 33, 1 29 30, 2 6 7, 2 22 32, 2 25 31, 3 8 9, \
     3 23 28, 3 24 27, 4 10 13, 5 11 12, 6 14 17, 7 15 16, 8 18 21, 9 19 20";

pub const DYADS_TEXT: &str = "10 24, 10 25, 11 23, 11 25, 12 22, 12 24, 13 22, 13 23, \
     14 28, 14 29, 15 27, 15 29, 16 26, 16 28, 17 26, 17 27, \
     18 32, 18 33, 19 31, 19 33, 20 30, 20 32, 21 30, 21 31";

/// Parses one `a b c` code into signed digits.
pub fn parse_code(s: &str) -> [i8; 3] {
    let mut out = Vec::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '-' => neg = true,
            d => {
                let v = d.to_digit(10).expect("digit") as i8;
                out.push(if neg { -v } else { v });
                neg = false;
            }
        }
    }
    out.try_into().expect("three components")
}

pub fn peres_codes() -> Vec<[i8; 3]> {
    PERES_TEXT.split_whitespace().map(parse_code).collect()
}

pub fn penrose_codes() -> Vec<([i8; 3], [i8; 3])> {
    PENROSE_TEXT
        .split_whitespace()
        .map(|p| {
            let (a, b) = p.split_once(',').expect("pair");
            (parse_code(a), parse_code(b))
        })
        .collect()
}

pub fn triads() -> Vec<[u8; 3]> {
    TRIADS_TEXT
        .split(',')
        .map(|t| t.split_whitespace().map(|x| x.parse().unwrap()).collect::<Vec<u8>>().try_into().unwrap())
        .collect()
}

pub fn dyads() -> Vec<[u8; 2]> {
    DYADS_TEXT
        .split(',')
        .map(|t| t.split_whitespace().map(|x| x.parse().unwrap()).collect::<Vec<u8>>().try_into().unwrap())
        .collect()
}

/// All 72 orthogonal pairs as `(lo, hi)`.
pub fn edges() -> BTreeSet<(u8, u8)> {
    let mut e = BTreeSet::new();
    for [a, b, c] in triads() {
        e.extend([(a, b), (a, c), (b, c)]);
    }
    for [a, b] in dyads() {
        e.insert((a, b));
    }
    e
}

/// Clauses in the documented DIMACS scheme, optionally with one ray deleted
/// (triads containing it become dyads, dyads containing it vanish).
pub fn clauses(deleted: Option<u8>) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut demoted = Vec::new();
    for t in triads() {
        if let Some(d) = deleted.filter(|d| t.contains(d)) {
            let rest: Vec<u8> = t.iter().copied().filter(|&x| x != d).collect();
            demoted.push([rest[0], rest[1]]);
            continue;
        }
        let [a, b, c] = t.map(i32::from);
        out.extend([vec![a, b, c], vec![-a, -b], vec![-a, -c], vec![-b, -c]]);
    }
    for [a, b] in dyads().into_iter().chain(demoted) {
        if deleted.is_some_and(|d| a == d || b == d) {
            continue;
        }
        out.push(vec![-i32::from(a), -i32::from(b)]);
    }
    out
}

pub fn satisfies(clauses: &[Vec<i32>], assignment: &[bool]) -> bool {
    clauses.iter().all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
}

/// Plain DPLL with unit propagation. Returns a model if satisfiable.
pub fn dpll(num_vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    fn solve(clauses: &[Vec<i32>], assign: &mut Vec<Option<bool>>) -> bool {
        loop {
            let mut unit = None;
            for c in clauses {
                let mut free = None;
                let mut n_free = 0;
                let mut sat = false;
                for &l in c {
                    match assign[l.unsigned_abs() as usize - 1] {
                        Some(v) if v == (l > 0) => {
                            sat = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            n_free += 1;
                            free = Some(l);
                        }
                    }
                }
                if sat {
                    continue;
                }
                match n_free {
                    0 => return false,
                    1 => {
                        unit = free;
                        break;
                    }
                    _ => {}
                }
            }
            match unit {
                Some(l) => assign[l.unsigned_abs() as usize - 1] = Some(l > 0),
                None => break,
            }
        }
        let Some(v) = assign.iter().position(Option::is_none) else {
            return true;
        };
        for value in [true, false] {
            let mut trial = assign.clone();
            trial[v] = Some(value);
            if solve(clauses, &mut trial) {
                *assign = trial;
                return true;
            }
        }
        false
    }
    let mut assign = vec![None; num_vars];
    solve(clauses, &mut assign).then(|| assign.into_iter().map(|v| v.unwrap_or(false)).collect())
}

/// Exhaustive colorability over `rays` (at most ~24 of them): each triad has
/// exactly one green and each dyad at most one. Constraints touching rays
/// outside `rays` are ignored, demoting triads to dyads as needed.
pub fn brute_force_colorable(rays: &[u8]) -> Option<Vec<u8>> {
    assert!(rays.len() <= 24);
    let pos = |r: u8| rays.iter().position(|&x| x == r);
    let mut exactly_one = Vec::new();
    let mut at_most_one = Vec::new();
    for t in triads() {
        let kept: Vec<usize> = t.iter().filter_map(|&r| pos(r)).collect();
        match kept.len() {
            3 => exactly_one.push(kept),
            2 => at_most_one.push(kept),
            _ => {}
        }
    }
    for d in dyads() {
        let kept: Vec<usize> = d.iter().filter_map(|&r| pos(r)).collect();
        if kept.len() == 2 {
            at_most_one.push(kept);
        }
    }
    let ones = |m: u32, c: &[usize]| c.iter().filter(|&&i| m >> i & 1 == 1).count();
    (0u32..1 << rays.len())
        .find(|&m| exactly_one.iter().all(|c| ones(m, c) == 1) && at_most_one.iter().all(|c| ones(m, c) <= 1))
        .map(|m| (0..rays.len()).filter(|&i| m >> i & 1 == 1).map(|i| rays[i]).collect())
}
