//! Line-oriented text format for certificate chains.
//!
//! ```text
//! POCKLINGTON-CERT 1
//! N <dec>
//! F <dec>
//! R <dec>
//! VARIANT BASIC | VARIANT EXTENDED <m>
//! WITNESS <p> <alpha> <a>        one per prime of F, ascending p
//! CHILD <p>                      zero or more, ascending p
//! ...nested document...
//! ENDCHILD
//! END
//! ```
//!
//! Every line ends in `\n`, tokens are separated by exactly one space and
//! integers are decimal without leading zeros. The parser accepts only the
//! canonical form, so `serialize(parse(doc)) == doc` byte for byte.

use std::fmt::Write as _;
use std::num::NonZeroU64;

use thiserror::Error;

use crate::arith::Nat;
use crate::pocklington::{Certificate, Variant, Witness};

pub const HEADER: &str = "POCKLINGTON-CERT";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: invariant violated: {message}")]
    Invariant { line: usize, message: String },
    #[error("line {line}: unsupported certificate version {version}")]
    UnsupportedVersion { line: usize, version: String },
}

/// Canonical text for `cert` and all its children.
pub fn serialize(cert: &Certificate) -> String {
    let mut out = String::new();
    write_cert(&mut out, cert);
    out
}

fn write_cert(out: &mut String, cert: &Certificate) {
    // Writing to a String cannot fail.
    let _ = writeln!(out, "{HEADER} {VERSION}");
    let _ = writeln!(out, "N {}", cert.n);
    let _ = writeln!(out, "F {}", cert.f1);
    let _ = writeln!(out, "R {}", cert.r1);
    match cert.variant {
        Variant::Basic => out.push_str("VARIANT BASIC\n"),
        Variant::Extended { m } => {
            let _ = writeln!(out, "VARIANT EXTENDED {m}");
        }
    }
    for w in &cert.witnesses {
        let _ = writeln!(out, "WITNESS {} {} {}", w.p, w.alpha, w.a);
    }
    for (p, child) in &cert.children {
        let _ = writeln!(out, "CHILD {p}");
        write_cert(out, child);
        out.push_str("ENDCHILD\n");
    }
    out.push_str("END\n");
}

/// Parses a complete document, checking `N - 1 = F * R` and that the
/// witness prime powers multiply to `F` at every level.
pub fn parse(doc: &str) -> Result<Certificate, ParseError> {
    let mut lines: Vec<&str> = doc.split('\n').collect();
    // A well-formed document ends with '\n', leaving one empty trailing piece.
    match lines.pop() {
        Some("") => {}
        _ => {
            return Err(ParseError::Syntax {
                line: lines.len() + 1,
                column: 1,
                message: "document must end with a newline".into(),
            })
        }
    }
    let mut parser = Parser { lines, pos: 0 };
    let cert = parser.certificate()?;
    if parser.pos != parser.lines.len() {
        return Err(parser.syntax(1, "trailing content after END"));
    }
    Ok(cert)
}

struct Parser<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

/// One line split into tokens with their 1-based columns.
struct Record<'a> {
    line: usize,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Record<'a> {
    fn keyword(&self) -> &'a str {
        self.tokens.first().map(|t| t.1).unwrap_or("")
    }
}

impl<'a> Parser<'a> {
    fn line_no(&self) -> usize {
        self.pos + 1
    }

    fn syntax(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line_no(),
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Result<Record<'a>, ParseError> {
        let Some(&text) = self.lines.get(self.pos) else {
            return Err(self.syntax(1, "unexpected end of document"));
        };
        if text.is_empty() {
            return Err(self.syntax(1, "empty line"));
        }
        if let Some(i) = text.find(|c: char| !(c.is_ascii_graphic() || c == ' ')) {
            return Err(self.syntax(i + 1, "only printable ASCII and single spaces are allowed"));
        }
        let mut tokens = Vec::new();
        let mut column = 1;
        for tok in text.split(' ') {
            if tok.is_empty() {
                return Err(self.syntax(column, "tokens must be separated by exactly one space"));
            }
            tokens.push((column, tok));
            column += tok.len() + 1;
        }
        Ok(Record {
            line: self.line_no(),
            tokens,
        })
    }

    /// Consumes a line that must start with `keyword` and have `arity` arguments.
    fn expect(&mut self, keyword: &str, arity: usize) -> Result<Record<'a>, ParseError> {
        let rec = self.peek()?;
        if rec.keyword() != keyword {
            return Err(self.syntax(1, format!("expected {keyword}, found {}", rec.keyword())));
        }
        if rec.tokens.len() != arity + 1 {
            let column = rec
                .tokens
                .get(arity + 1)
                .map_or(rec.tokens.last().unwrap().0, |t| t.0);
            return Err(self.syntax(
                column,
                format!(
                    "{keyword} takes {arity} argument(s), found {}",
                    rec.tokens.len() - 1
                ),
            ));
        }
        self.pos += 1;
        Ok(rec)
    }

    fn decimal(&self, rec: &Record<'_>, index: usize) -> Result<Nat, ParseError> {
        let (column, tok) = rec.tokens[index];
        let err = |message: &str| ParseError::Syntax {
            line: rec.line,
            column,
            message: message.to_string(),
        };
        if !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected a decimal natural number"));
        }
        if tok.len() > 1 && tok.starts_with('0') {
            return Err(err("leading zeros are not allowed"));
        }
        tok.parse::<Nat>()
            .map_err(|_| err("expected a decimal natural number"))
    }

    fn small(&self, rec: &Record<'_>, index: usize) -> Result<u64, ParseError> {
        let value = self.decimal(rec, index)?;
        u64::try_from(&value).map_err(|_| ParseError::Syntax {
            line: rec.line,
            column: rec.tokens[index].0,
            message: "value does not fit in 64 bits".into(),
        })
    }

    fn certificate(&mut self) -> Result<Certificate, ParseError> {
        let header = self.expect(HEADER, 1)?;
        let (_, version) = header.tokens[1];
        if version != VERSION.to_string() {
            return Err(ParseError::UnsupportedVersion {
                line: header.line,
                version: version.to_string(),
            });
        }
        let start_line = header.line;

        let rec = self.expect("N", 1)?;
        let n = self.decimal(&rec, 1)?;
        let rec = self.expect("F", 1)?;
        let f1 = self.decimal(&rec, 1)?;
        let rec = self.expect("R", 1)?;
        let r1 = self.decimal(&rec, 1)?;

        let rec = self.peek()?;
        if rec.keyword() != "VARIANT" || rec.tokens.len() < 2 {
            return Err(self.syntax(1, "expected VARIANT BASIC or VARIANT EXTENDED <m>"));
        }
        let variant = match rec.tokens[1].1 {
            "BASIC" => {
                self.expect("VARIANT", 1)?;
                Variant::Basic
            }
            "EXTENDED" => {
                let rec = self.expect("VARIANT", 2)?;
                let m = self.small(&rec, 2)?;
                let m = NonZeroU64::new(m).ok_or_else(|| ParseError::Invariant {
                    line: rec.line,
                    message: "extended parameter m must be at least 1".into(),
                })?;
                Variant::Extended { m }
            }
            other => {
                return Err(self.syntax(rec.tokens[1].0, format!("unknown variant {other}")));
            }
        };

        let mut witnesses: Vec<Witness> = Vec::new();
        while self.peek()?.keyword() == "WITNESS" {
            let rec = self.expect("WITNESS", 3)?;
            let w = Witness {
                p: self.decimal(&rec, 1)?,
                alpha: self.small(&rec, 2)?,
                a: self.decimal(&rec, 3)?,
            };
            if witnesses.last().is_some_and(|prev| prev.p >= w.p) {
                return Err(ParseError::Invariant {
                    line: rec.line,
                    message: "witness primes must be strictly ascending".into(),
                });
            }
            witnesses.push(w);
        }

        let mut cert = Certificate {
            n,
            f1,
            r1,
            witnesses,
            variant,
            children: Default::default(),
        };
        if let Some(message) = cert.structure_violation() {
            return Err(ParseError::Invariant {
                line: start_line,
                message,
            });
        }

        while self.peek()?.keyword() == "CHILD" {
            let rec = self.expect("CHILD", 1)?;
            let p = self.decimal(&rec, 1)?;
            if cert
                .children
                .keys()
                .next_back()
                .is_some_and(|last| *last >= p)
            {
                return Err(ParseError::Invariant {
                    line: rec.line,
                    message: "child certificates must be strictly ascending".into(),
                });
            }
            let child = self.certificate()?;
            self.expect("ENDCHILD", 0)?;
            cert.children.insert(p, child);
        }
        self.expect("END", 0)?;
        Ok(cert)
    }
}
