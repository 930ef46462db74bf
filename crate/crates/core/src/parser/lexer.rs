use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Number(String),
    Z,
    Zbar,
    Conj,
    I,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Z => "`z`".into(),
            Tok::Zbar => "`zbar`".into(),
            Tok::Conj => "`conj`".into(),
            Tok::I => "`i`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub offset: usize,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        let start = pos;
        let single = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, offset: start });
            pos += 1;
            continue;
        }
        if b.is_ascii_digit() || b == b'.' {
            pos = scan_number(bytes, pos);
            out.push(Token {
                tok: Tok::Number(src[start..pos].to_string()),
                offset: start,
            });
            continue;
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            let tok = match &src[start..pos] {
                "z" => Tok::Z,
                "zbar" => Tok::Zbar,
                "conj" => Tok::Conj,
                "i" => Tok::I,
                other => {
                    return Err(ParseError::Syntax {
                        offset: start,
                        expected: ATOM_START.to_vec(),
                        found: format!("identifier `{other}`"),
                    })
                }
            };
            out.push(Token { tok, offset: start });
            continue;
        }
        let ch = src[start..].chars().next().unwrap_or('?');
        return Err(ParseError::Syntax {
            offset: start,
            expected: ATOM_START.to_vec(),
            found: format!("character `{ch}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        offset: src.len(),
    });
    Ok(out)
}

pub(crate) const ATOM_START: &[&str] = &["number", "`i`", "`z`", "`zbar`", "`conj`", "`(`", "`-`"];

/// `digits[.digits][(e|E)[+-]digits][/digits[.digits]]`
fn scan_number(bytes: &[u8], mut pos: usize) -> usize {
    let digits = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
    };
    digits(&mut pos);
    if pos < bytes.len() && bytes[pos] == b'.' {
        pos += 1;
        digits(&mut pos);
    }
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        let mut look = pos + 1;
        if look < bytes.len() && (bytes[look] == b'+' || bytes[look] == b'-') {
            look += 1;
        }
        if look < bytes.len() && bytes[look].is_ascii_digit() {
            pos = look;
            digits(&mut pos);
        }
    }
    if pos + 1 < bytes.len() && bytes[pos] == b'/' && bytes[pos + 1].is_ascii_digit() {
        pos += 1;
        digits(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'.' {
            pos += 1;
            digits(&mut pos);
        }
    }
    pos
}
