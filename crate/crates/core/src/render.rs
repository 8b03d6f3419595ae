//! Plain-text and LaTeX renderers for expansions.
//!
//! Output is deterministic: terms are rendered in their stored canonical
//! order, so identical inputs produce byte-identical strings. LaTeX follows
//! the usual display conventions for these identities: partial-derivative
//! fractions, primes for outer derivatives up to order 3 and a superscript
//! (m) beyond.

use num_bigint::BigUint;
use num_traits::One;

use crate::expansion::CompositionExpansion;
use crate::multiset::Multiset;
use crate::product::ProductExpansion;

// ---------------------------------------------------------------------------
// plain text
// ---------------------------------------------------------------------------

/// `dx1 dx2^2` — the differentiation factors of a signature.
fn denominator_text(sig: &Multiset) -> String {
    sig.iter()
        .map(|(v, c)| {
            if c == 1 {
                format!("dx{v}")
            } else {
                format!("dx{v}^{c}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `d^3/dx1 dx2^2` — the operator for a non-empty signature.
fn operator_text(sig: &Multiset) -> String {
    let n = sig.size();
    if n == 1 {
        format!("d/{}", denominator_text(sig))
    } else {
        format!("d^{n}/{}", denominator_text(sig))
    }
}

/// `(d^2y/dx1 dx2)` — one derivative factor of the inner function.
fn block_text(part: &Multiset, symbol: &str) -> String {
    let s = part.size();
    if s == 1 {
        format!("(d{symbol}/{})", denominator_text(part))
    } else {
        format!("(d^{s}{symbol}/{})", denominator_text(part))
    }
}

/// `f(y)`, `f'(y)`, ..., `f^(4)(y)`.
fn f_factor_text(order: u64) -> String {
    match order {
        0 => "f(y)".to_string(),
        1..=3 => format!("f{}(y)", "'".repeat(order as usize)),
        m => format!("f^({m})(y)"),
    }
}

fn coefficient_prefix_text(c: &BigUint) -> String {
    if c.is_one() {
        String::new()
    } else {
        format!("{c} ")
    }
}

fn join_term_lines(lines: Vec<String>) -> String {
    let mut out = String::new();
    for (i, line) in lines.iter().enumerate() {
        if i == 0 {
            out.push_str("    ");
        } else {
            out.push_str("\n  + ");
        }
        out.push_str(line);
    }
    out
}

/// Render a composition expansion as indented text, one term per line.
/// With `exponential` set the outer function is e^y: the common factor is
/// pulled out front and no f-derivative factors appear.
pub fn render_composition_text(e: &CompositionExpansion, exponential: bool) -> String {
    let sig = e.signature();
    if exponential {
        if sig.is_empty() {
            return "e^y = e^y".to_string();
        }
        let lines: Vec<String> = e
            .terms()
            .iter()
            .map(|t| {
                let blocks: Vec<String> = t
                    .shape
                    .parts()
                    .iter()
                    .map(|(part, m)| {
                        let b = block_text(part, "y");
                        if *m == 1 {
                            b
                        } else {
                            format!("{b}^{m}")
                        }
                    })
                    .collect();
                format!("{}{}", coefficient_prefix_text(&t.coefficient), blocks.join(" "))
            })
            .collect();
        format!(
            "{} e^y = e^y (\n{}\n)",
            operator_text(sig),
            join_term_lines(lines)
        )
    } else {
        let lhs = if sig.is_empty() {
            "f(y)".to_string()
        } else {
            format!("{} f(y)", operator_text(sig))
        };
        let lines: Vec<String> = e
            .terms()
            .iter()
            .map(|t| {
                let mut body = format!(
                    "{}{}",
                    coefficient_prefix_text(&t.coefficient),
                    f_factor_text(t.f_order)
                );
                for (part, m) in t.shape.parts() {
                    body.push(' ');
                    body.push_str(&block_text(part, "y"));
                    if *m > 1 {
                        body.push_str(&format!("^{m}"));
                    }
                }
                body
            })
            .collect();
        format!("{lhs} =\n{}", join_term_lines(lines))
    }
}

/// Render a product expansion as indented text, one term per line.
pub fn render_product_text(e: &ProductExpansion) -> String {
    let sig = e.signature();
    let lhs = if sig.is_empty() {
        "u v".to_string()
    } else {
        format!("{} (u v)", operator_text(sig))
    };
    let lines: Vec<String> = e
        .terms()
        .iter()
        .map(|t| {
            let u = if t.u_part.is_empty() {
                "u".to_string()
            } else {
                block_text(&t.u_part, "u")
            };
            let v = if t.v_part.is_empty() {
                "v".to_string()
            } else {
                block_text(&t.v_part, "v")
            };
            format!("{}{u} {v}", coefficient_prefix_text(&t.coefficient))
        })
        .collect();
    format!("{lhs} =\n{}", join_term_lines(lines))
}

// ---------------------------------------------------------------------------
// LaTeX
// ---------------------------------------------------------------------------

/// `\partial x_{1}\,\partial x_{2}^{2}`.
fn denominator_latex(sig: &Multiset) -> String {
    sig.iter()
        .map(|(v, c)| {
            if c == 1 {
                format!("\\partial x_{{{v}}}")
            } else {
                format!("\\partial x_{{{v}}}^{{{c}}}")
            }
        })
        .collect::<Vec<_>>()
        .join("\\,")
}

/// `\frac{\partial^{3}}{\partial x_{1}\,\partial x_{2}^{2}}`.
fn operator_latex(sig: &Multiset) -> String {
    let n = sig.size();
    let numerator = if n == 1 {
        "\\partial".to_string()
    } else {
        format!("\\partial^{{{n}}}")
    };
    format!("\\frac{{{numerator}}}{{{}}}", denominator_latex(sig))
}

/// `\frac{\partial^{2} y}{\partial x_{1}\,\partial x_{2}}`.
fn block_latex(part: &Multiset, symbol: &str) -> String {
    let s = part.size();
    let numerator = if s == 1 {
        format!("\\partial {symbol}")
    } else {
        format!("\\partial^{{{s}}} {symbol}")
    };
    format!("\\frac{{{numerator}}}{{{}}}", denominator_latex(part))
}

fn powered_block_latex(part: &Multiset, symbol: &str, m: u32) -> String {
    let block = block_latex(part, symbol);
    if m == 1 {
        block
    } else {
        format!("\\left({block}\\right)^{{{m}}}")
    }
}

/// `f(y)`, `f'(y)`, `f''(y)`, `f'''(y)`, `f^{(4)}(y)`.
fn f_factor_latex(order: u64) -> String {
    match order {
        0 => "f(y)".to_string(),
        1..=3 => format!("f{}(y)", "'".repeat(order as usize)),
        m => format!("f^{{({m})}}(y)"),
    }
}

fn coefficient_prefix_latex(c: &BigUint) -> String {
    if c.is_one() {
        String::new()
    } else {
        format!("{c}\\,")
    }
}

/// Render a composition expansion as a single LaTeX display equation.
pub fn render_composition_latex(e: &CompositionExpansion, exponential: bool) -> String {
    let sig = e.signature();
    if exponential {
        if sig.is_empty() {
            return "e^{y} = e^{y}".to_string();
        }
        let terms: Vec<String> = e
            .terms()
            .iter()
            .map(|t| {
                let blocks: Vec<String> = t
                    .shape
                    .parts()
                    .iter()
                    .map(|(part, m)| powered_block_latex(part, "y", *m))
                    .collect();
                format!(
                    "{}{}",
                    coefficient_prefix_latex(&t.coefficient),
                    blocks.join("\\cdot")
                )
            })
            .collect();
        format!(
            "{} e^{{y}} = e^{{y}}\\left( {} \\right)",
            operator_latex(sig),
            terms.join(" + ")
        )
    } else {
        let lhs = if sig.is_empty() {
            "f(y)".to_string()
        } else {
            format!("{} f(y)", operator_latex(sig))
        };
        let terms: Vec<String> = e
            .terms()
            .iter()
            .map(|t| {
                let mut body = format!(
                    "{}{}",
                    coefficient_prefix_latex(&t.coefficient),
                    f_factor_latex(t.f_order)
                );
                for (i, (part, m)) in t.shape.parts().iter().enumerate() {
                    // thin space after the f factor, \cdot between blocks
                    body.push_str(if i == 0 { "\\," } else { "\\cdot" });
                    body.push_str(&powered_block_latex(part, "y", *m));
                }
                body
            })
            .collect();
        format!("{lhs} = {}", terms.join(" + "))
    }
}

/// Render a product expansion as a single LaTeX display equation.
pub fn render_product_latex(e: &ProductExpansion) -> String {
    let sig = e.signature();
    let lhs = if sig.is_empty() {
        "uv".to_string()
    } else {
        format!("{}\\,(uv)", operator_latex(sig))
    };
    let terms: Vec<String> = e
        .terms()
        .iter()
        .map(|t| {
            let u = if t.u_part.is_empty() {
                "u".to_string()
            } else {
                block_latex(&t.u_part, "u")
            };
            let v = if t.v_part.is_empty() {
                "v".to_string()
            } else {
                block_latex(&t.v_part, "v")
            };
            format!("{}{u}\\cdot {v}", coefficient_prefix_latex(&t.coefficient))
        })
        .collect();
    format!("{lhs} = {}", terms.join(" + "))
}
