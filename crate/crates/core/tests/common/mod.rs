//! Independent reference implementations used as test oracles. They work on
//! raw token characters and share no code with the library.

#![allow(dead_code)]

pub const ALPHABET: [char; 17] = [
    '0', '1', '2', '3', '4', '5', '6', '7', '8', '9', '#', '(', ')', '*', '+', 'S', 'x',
];

fn is_digit(c: char) -> bool {
    c.is_ascii_digit()
}

/// Value of the expression at `s[*i..]`, advancing `i`; `None` when the
/// grammar is violated.
fn expr(s: &[char], i: &mut usize, x: u32, m: u32) -> Option<u32> {
    let c = *s.get(*i)?;
    *i += 1;
    match c {
        'x' => Some(x),
        d if is_digit(d) => {
            let v = d.to_digit(10)?;
            (v < m).then_some(v)
        }
        '(' => {
            let a = expr(s, i, x, m)?;
            let op = *s.get(*i)?;
            *i += 1;
            let b = expr(s, i, x, m)?;
            if s.get(*i) != Some(&')') {
                return None;
            }
            *i += 1;
            match op {
                '+' => Some((a + b) % m),
                '*' => Some((a * b) % m),
                _ => None,
            }
        }
        _ => None,
    }
}

fn whole_expr(s: &[char], x: u32, m: u32) -> Option<u32> {
    let mut i = 0;
    let v = expr(s, &mut i, x, m)?;
    (i == s.len()).then_some(v)
}

/// Splits off the comment: `# d+` and, before a digit-led body, a closing
/// `#`. Returns the body.
fn body(s: &[char]) -> Option<&[char]> {
    if s.first() != Some(&'#') {
        return Some(s);
    }
    let mut i = 1;
    while i < s.len() && is_digit(s[i]) {
        i += 1;
    }
    if i == 1 {
        return None;
    }
    if s.get(i) == Some(&'#') {
        let rest = &s[i + 1..];
        return rest.first().copied().filter(|&c| is_digit(c)).map(|_| rest);
    }
    let rest = &s[i..];
    match rest.first() {
        Some(&c) if !is_digit(c) => Some(rest),
        _ => None,
    }
}

/// `f(x)` for a token string, or `None` if it is not a program.
pub fn eval(s: &[char], x: u32, m: u32) -> Option<u32> {
    let b = body(s)?;
    match b.iter().position(|&c| c == 'S') {
        None => whole_expr(b, x, m),
        Some(0) => None,
        Some(sep) => {
            let sel = b[0];
            let run1 = &b[1..sep];
            let run2 = &b[sep + 1..];
            if run1.iter().chain(run2).any(|&c| c == '#' || c == 'S') {
                return None;
            }
            match sel {
                '1' => whole_expr(run1, x, m),
                '2' => whole_expr(run2, x, m),
                _ => None,
            }
        }
    }
}

pub fn is_program(s: &[char], m: u32) -> bool {
    eval(s, 0, m).is_some()
}

pub fn table(s: &[char], m: u32) -> Vec<u32> {
    (0..m).map(|x| eval(s, x, m).expect("well-formed")).collect()
}

pub fn chars(text: &str) -> Vec<char> {
    text.split_whitespace().flat_map(|t| t.chars()).collect()
}

pub fn text(s: &[char]) -> String {
    s.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// All programs of exactly `k` tokens, in canonical order.
pub fn brute_level(k: usize, m: u32) -> Vec<Vec<char>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let s: Vec<char> = idx.iter().map(|&i| ALPHABET[i]).collect();
        if is_program(&s, m) {
            out.push(s);
        }
        // odometer, last position fastest: lexicographic order
        let mut j = k;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < ALPHABET.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}
