use super::{Pos, SurfaceError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Kw(&'static str),
    Sym(&'static str),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(x) => format!("identifier `{x}`"),
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Kw(k) => format!("keyword `{k}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

pub const KEYWORDS: &[&str] = &[
    "N", "S", "fun", "rec", "forall", "exists", "bot", "top", "null", "refl", "peel", "efq", "ind",
    "wit", "unpack", "in", "ext", "apppm", "def", "theorem", "logic", "lhaw", "lehaw", "generated",
];

// Longest first, so that `->` wins over `-` and `:=` over `:`.
const SYMBOLS: &[&str] = &[
    "/\\", "\\/", "->", "=>", ":=", "!=", "(", ")", "[", "]", "{", "}", ":", ",", ".", "=",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

pub fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, SurfaceError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let (mut line, mut col) = (1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut end = i;
            while end < chars.len() && (chars[end].is_ascii_alphanumeric() || matches!(chars[end], '_' | '\'' | '#')) {
                end += 1;
            }
            let word: String = chars[start..end].iter().collect();
            advance(&mut i, &mut line, &mut col, end - start);
            let tok = match KEYWORDS.iter().find(|k| **k == word) {
                Some(k) => Tok::Kw(k),
                None => Tok::Ident(word),
            };
            out.push((tok, pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            let mut end = i;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            let digits: String = chars[start..end].iter().collect();
            let n = digits
                .parse::<u64>()
                .ok()
                .filter(|n| *n <= 100_000)
                .ok_or_else(|| SurfaceError::lexical(pos, format!("numeral `{digits}` is too large")))?;
            advance(&mut i, &mut line, &mut col, end - start);
            out.push((Tok::Num(n), pos));
            continue;
        }
        let sym = SYMBOLS.iter().find(|s| {
            let sc: Vec<char> = s.chars().collect();
            chars[i..].starts_with(&sc)
        });
        match sym {
            Some(s) => {
                advance(&mut i, &mut line, &mut col, s.chars().count());
                out.push((Tok::Sym(s), pos));
            }
            None => return Err(SurfaceError::lexical(pos, format!("unexpected character `{c}`"))),
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
