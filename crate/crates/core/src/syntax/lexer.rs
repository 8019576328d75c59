use crate::diag::{line_col, Diagnostic};

use super::term::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(u32),
    Def,
    Axiom,
    Fun,
    Type,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LAngle,
    RAngle,
    Comma,
    Colon,
    ColonEq,
    FatArrow,
    Arrow,
    Star,
    PlusOne,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Nat(n) => format!("numeral `{n}`"),
            Tok::Def => "`def`".into(),
            Tok::Axiom => "`axiom`".into(),
            Tok::Fun => "`fun`".into(),
            Tok::Type => "`Type`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::ColonEq => "`:=`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Star => "`*`".into(),
            Tok::PlusOne => "`+1`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn err(source: &str, file: &str, code: &str, offset: usize, msg: String) -> Diagnostic {
    let (line, col) = line_col(source, offset);
    Diagnostic::error(code, msg).in_file(file).at_line_col(line, col)
}

pub fn lex(source: &str, file: &str) -> Result<Vec<Token>, Diagnostic> {
    let bytes = source.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = source[i..].chars().next().expect("in bounds");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if source[i..].starts_with("--") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let two = source.get(i..i + 2).unwrap_or("");
        let (tok, len) = match two {
            ":=" => (Tok::ColonEq, 2),
            "=>" => (Tok::FatArrow, 2),
            "->" => (Tok::Arrow, 2),
            "+1" => (Tok::PlusOne, 2),
            _ => match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '{' => (Tok::LBrace, 1),
                '}' => (Tok::RBrace, 1),
                '<' => (Tok::LAngle, 1),
                '>' => (Tok::RAngle, 1),
                ',' => (Tok::Comma, 1),
                ':' => (Tok::Colon, 1),
                '*' => (Tok::Star, 1),
                c if c.is_ascii_digit() => {
                    let mut j = i;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j < bytes.len() && is_ident_start(bytes[j] as char) {
                        return Err(err(
                            source,
                            file,
                            "parse/lex-error",
                            start,
                            "identifiers may not start with a digit".into(),
                        ));
                    }
                    let n = source[i..j].parse::<u32>().map_err(|_| {
                        err(source, file, "parse/lex-error", start, "numeral too large".into())
                    })?;
                    (Tok::Nat(n), j - i)
                }
                c if is_ident_start(c) => {
                    let mut j = i;
                    while j < bytes.len() && is_ident_char(bytes[j] as char) {
                        j += 1;
                    }
                    let word = &source[i..j];
                    let tok = match word {
                        "def" => Tok::Def,
                        "axiom" => Tok::Axiom,
                        "fun" => Tok::Fun,
                        "Type" => Tok::Type,
                        _ => Tok::Ident(word.to_string()),
                    };
                    (tok, j - i)
                }
                other => {
                    return Err(err(
                        source,
                        file,
                        "parse/lex-error",
                        start,
                        format!("unexpected character `{other}`"),
                    ))
                }
            },
        };
        i += len;
        toks.push(Token { tok, span: Span::new(start, i) });
    }
    toks.push(Token { tok: Tok::Eof, span: Span::new(source.len(), source.len()) });
    check_delimiters(&toks, source, file)?;
    Ok(toks)
}

fn check_delimiters(toks: &[Token], source: &str, file: &str) -> Result<(), Diagnostic> {
    let mut stack: Vec<&Token> = Vec::new();
    for t in toks {
        let closer_of = |open: &Tok| match open {
            Tok::LParen => Tok::RParen,
            Tok::LBrace => Tok::RBrace,
            _ => Tok::RAngle,
        };
        match t.tok {
            Tok::LParen | Tok::LBrace | Tok::LAngle => stack.push(t),
            Tok::RParen | Tok::RBrace | Tok::RAngle => match stack.pop() {
                Some(open) if closer_of(&open.tok) == t.tok => {}
                Some(open) => {
                    return Err(err(
                        source,
                        file,
                        "parse/unbalanced-delimiter",
                        t.span.start as usize,
                        format!(
                            "{} does not close {} opened at offset {}",
                            t.tok.describe(),
                            open.tok.describe(),
                            open.span.start
                        ),
                    ))
                }
                None => {
                    return Err(err(
                        source,
                        file,
                        "parse/unbalanced-delimiter",
                        t.span.start as usize,
                        format!("unmatched {}", t.tok.describe()),
                    ))
                }
            },
            _ => {}
        }
    }
    if let Some(open) = stack.pop() {
        return Err(err(
            source,
            file,
            "parse/unbalanced-delimiter",
            open.span.start as usize,
            format!("{} is never closed", open.tok.describe()),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        lex(src, "t").unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn symbols_and_words() {
        assert_eq!(
            kinds("def x' {i} : Type (i +1) := fun (a : A) => <a, a> -- c"),
            vec![
                Tok::Def,
                Tok::Ident("x'".into()),
                Tok::LBrace,
                Tok::Ident("i".into()),
                Tok::RBrace,
                Tok::Colon,
                Tok::Type,
                Tok::LParen,
                Tok::Ident("i".into()),
                Tok::PlusOne,
                Tok::RParen,
                Tok::ColonEq,
                Tok::Fun,
                Tok::LParen,
                Tok::Ident("a".into()),
                Tok::Colon,
                Tok::Ident("A".into()),
                Tok::RParen,
                Tok::FatArrow,
                Tok::LAngle,
                Tok::Ident("a".into()),
                Tok::Comma,
                Tok::Ident("a".into()),
                Tok::RAngle,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn non_ascii_is_rejected() {
        let e = lex("def λ : Type 0 := x", "f.ht").unwrap_err();
        assert_eq!(e.code, "parse/lex-error");
        assert_eq!((e.line, e.col), (1, 5));
    }

    #[test]
    fn unbalanced() {
        let e = lex("def x : (Type 0 := y", "f.ht").unwrap_err();
        assert_eq!(e.code, "parse/unbalanced-delimiter");
        let e = lex("def x : Type 0) := y", "f.ht").unwrap_err();
        assert_eq!(e.code, "parse/unbalanced-delimiter");
        assert_eq!(e.col, 15);
    }
}
