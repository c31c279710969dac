use super::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Word(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Eq,
    Comma,
    Slash,
    Arrow,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Arrow => "`->`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

const PUNCT: &[char] = &['{', '}', '(', ')', ':', ';', '=', ',', '/', '#'];

/// Splits `text` into tokens. Lexing cannot fail: every run of characters
/// that is neither space nor punctuation is a word.
pub fn lex(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        let start = Span {
            line,
            col,
            offset,
            len: c.len_utf8(),
        };
        let advance = |ch: char, line: &mut usize, col: &mut usize| {
            if ch == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        if c == '#' {
            while let Some(&(_, ch)) = chars.peek() {
                if ch == '\n' {
                    break;
                }
                chars.next();
                advance(ch, &mut line, &mut col);
            }
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut line, &mut col);
            continue;
        }
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            ',' => Some(Tok::Comma),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            advance(c, &mut line, &mut col);
            tokens.push(Token { tok, span: start });
            continue;
        }
        if c == '-' && text[offset..].starts_with("->") {
            chars.next();
            chars.next();
            col += 2;
            tokens.push(Token {
                tok: Tok::Arrow,
                span: Span { len: 2, ..start },
            });
            continue;
        }
        let mut end = offset;
        while let Some(&(o, ch)) = chars.peek() {
            if ch.is_whitespace() || PUNCT.contains(&ch) || text[o..].starts_with("->") {
                break;
            }
            chars.next();
            advance(ch, &mut line, &mut col);
            end = o + ch.len_utf8();
        }
        tokens.push(Token {
            tok: Tok::Word(text[offset..end].to_string()),
            span: Span {
                len: end - offset,
                ..start
            },
        });
    }
    tokens
}

/// Whether `label` survives a print and re-lex as a single word.
pub fn is_word(label: &str) -> bool {
    !label.is_empty()
        && !label.contains("->")
        && !label
            .chars()
            .any(|c| c.is_whitespace() || PUNCT.contains(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<Tok> {
        lex(text).into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn punctuation_and_words() {
        assert_eq!(
            toks("op join/2: a b, c; # note\nx->(0 1)"),
            vec![
                Tok::Word("op".into()),
                Tok::Word("join".into()),
                Tok::Slash,
                Tok::Word("2".into()),
                Tok::Colon,
                Tok::Word("a".into()),
                Tok::Word("b".into()),
                Tok::Comma,
                Tok::Word("c".into()),
                Tok::Semi,
                Tok::Word("x".into()),
                Tok::Arrow,
                Tok::LParen,
                Tok::Word("0".into()),
                Tok::Word("1".into()),
                Tok::RParen,
            ]
        );
    }

    #[test]
    fn spans_track_lines_and_unicode() {
        let t = lex("a\n  ∅ m1+m2");
        assert_eq!(
            t[1].span,
            Span {
                line: 2,
                col: 3,
                offset: 4,
                len: 3
            }
        );
        assert_eq!(
            t[2].span,
            Span {
                line: 2,
                col: 5,
                offset: 8,
                len: 5
            }
        );
        assert_eq!(t[2].tok, Tok::Word("m1+m2".into()));
    }

    #[test]
    fn words() {
        assert!(is_word("m1+m2") && is_word("∅") && is_word("0.1") && is_word("x|y"));
        assert!(!is_word("a b") && !is_word("a->b") && !is_word("") && !is_word("f(x)"));
    }
}
