//! Published degree-six example polynomials and their checks.

use std::fmt;

use crate::error::Result;
use crate::patterns::Couple;
use crate::poly::{
    couple_of, decimal_places, expand, format_exact, parse_rational, resolve_ties, round_to_places, Polynomial,
    Provenance, Rational, RootConfiguration, Witness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedExample {
    pub pattern: &'static str,
    pub order: &'static str,
    pub roots: [&'static str; 6],
    /// Printed coefficients, leading first.
    pub printed: [&'static str; 7],
}

impl PublishedExample {
    pub fn label(&self) -> String {
        format!("{}/{}", self.pattern, self.order)
    }

    pub fn claimed(&self) -> Couple {
        Couple::new(self.pattern.parse().expect("builtin pattern"), self.order.parse().expect("builtin order"))
    }

    pub fn roots(&self) -> RootConfiguration {
        RootConfiguration::parse(&self.roots).expect("builtin roots")
    }
}

pub const PUBLISHED_EXAMPLES: [PublishedExample; 13] = [
    PublishedExample {
        pattern: "3,1,2,1",
        order: "PPPNNN",
        roots: ["0.39", "0.4", "1", "-1", "-1.01", "-9"],
        printed: ["1", "8.23", "0.1902", "-13.26928", "0.08276", "5.03928", "-1.27296"],
    },
    PublishedExample {
        pattern: "3,1,2,1",
        order: "PPNPNN",
        roots: ["0.2", "1", "-1", "3.1", "-5", "-10"],
        printed: ["1", "11.7", "0.12", "-167.4", "29.88", "155.7", "-31"],
    },
    PublishedExample {
        pattern: "3,1,2,1",
        order: "PPNNPN",
        roots: ["0.39", "0.4", "-0.99", "-1", "1", "-9"],
        printed: ["1", "9.2", "0.1739", "-14.68046", "0.21606", "5.48046", "-1.38996"],
    },
    PublishedExample {
        pattern: "3,1,2,1",
        order: "NPPPNN",
        roots: ["-1", "1", "2", "2.1", "-5", "-20"],
        printed: ["1", "20.9", "0.7", "-325.9", "418.3", "305", "-420"],
    },
    PublishedExample {
        pattern: "2,1,2,2",
        order: "PNNPPN",
        roots: ["4.52", "-5.02", "-5.32", "7.002", "8.003", "-9.32"],
        printed: ["1", "0.135", "-136.926694", "27.6529548", "5404.574382", "-344.273285", "-63044.12478"],
    },
    PublishedExample {
        pattern: "2,1,2,2",
        order: "NPPPNN",
        roots: ["-2.5", "4.95", "6.47", "8.19", "-8.57", "-9.05"],
        printed: ["1", "0.51", "-147.3884", "73.049286", "6188.991502", "-7552.653247", "-50858.41147"],
    },
    PublishedExample {
        pattern: "2,1,2,2",
        order: "NPPNPN",
        roots: ["-1.49", "1.87", "5.77", "-5.96", "7.58", "-8.07"],
        printed: ["1", "0.3", "-98.5114", "5.90954", "2380.426651", "-720.0363792", "-5861.282963"],
    },
    PublishedExample {
        pattern: "2,1,2,2",
        order: "NPPNNP",
        roots: ["-1.34", "3.43", "5.34", "-7.86", "-9", "9.4"],
        printed: ["1", "0.03", "-136.6074", "60.496052", "4547.732428", "-6518.600281", "-16320.4859"],
    },
    PublishedExample {
        pattern: "2,1,2,2",
        order: "NNPPPN",
        roots: ["-2.5", "-3.03", "4.28", "4.4", "5.6", "-9.4"],
        printed: ["1", "0.65", "-86.2034", "122.15104", "1425.210824", "-1478.768374", "-7509.222336"],
    },
    PublishedExample {
        pattern: "2,2,2,1",
        order: "NPPNNP",
        roots: ["-4", "5", "6", "-8.74", "-9.41", "9.59"],
        printed: ["1", "1.56", "-165.7351", "-145.848506", "7833.610842", "24.186884", "-94645.70472"],
    },
    PublishedExample {
        pattern: "3,2,1,1",
        order: "PPPNNN",
        roots: ["0.039", "0.4", "1", "-1", "-1.001", "-4"],
        printed: ["1", "4.562", "0.824161", "-6.2417404", "-1.7616986", "1.6797404", "-0.0624624"],
    },
    PublishedExample {
        pattern: "3,2,1,1",
        order: "PPNNPN",
        roots: ["0.09", "0.19", "-0.8", "-1", "1", "-13"],
        printed: ["1", "13.52", "5.5531", "-16.19602", "-6.37526", "2.67602", "-0.17784"],
    },
    PublishedExample {
        pattern: "3,2,1,1",
        order: "PNPPNN",
        roots: ["0.02", "-1", "1", "3.1", "-5", "-20"],
        printed: ["1", "21.88", "21.062", "-332.33", "-15.862", "310.45", "-6.2"],
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientMatch {
    /// Printed value equals the exact coefficient.
    Exact,
    /// Printed value is the exact coefficient rounded to the printed places.
    Rounded,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientCheck {
    /// Power of `x`.
    pub power: usize,
    pub printed: String,
    pub exact: Rational,
    pub status: CoefficientMatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleCheck {
    pub example: PublishedExample,
    pub polynomial: Polynomial,
    pub coefficients: Vec<CoefficientCheck>,
    /// Shrink factor used to separate equal moduli, if any were equal.
    pub epsilon: Option<Rational>,
    /// The couple realized after separating ties, or the reason it failed.
    pub realized: std::result::Result<Couple, String>,
    pub witness: Option<Witness>,
}

impl ExampleCheck {
    pub fn exact(&self) -> bool {
        self.coefficients.iter().all(|c| c.status == CoefficientMatch::Exact)
    }

    pub fn digits_agree(&self) -> bool {
        self.coefficients.iter().all(|c| c.status != CoefficientMatch::Mismatch)
    }

    pub fn couple_matches(&self) -> bool {
        self.realized.as_ref().is_ok_and(|c| *c == self.example.claimed())
    }
}

fn check_coefficient(power: usize, printed: &str, exact: &Rational) -> CoefficientCheck {
    let status = match parse_rational(printed) {
        Ok(value) if &value == exact => CoefficientMatch::Exact,
        Ok(value) if round_to_places(exact, decimal_places(printed)) == value => CoefficientMatch::Rounded,
        _ => CoefficientMatch::Mismatch,
    };
    CoefficientCheck { power, printed: printed.to_string(), exact: exact.clone(), status }
}

pub fn check_example(example: &PublishedExample) -> ExampleCheck {
    let roots = example.roots();
    let polynomial = expand(&roots);
    let d = polynomial.degree();
    let coefficients = example
        .printed
        .iter()
        .enumerate()
        .map(|(i, printed)| check_coefficient(d - i, printed, polynomial.coefficient(d - i)))
        .collect();
    let claimed = example.claimed();
    let (realized, epsilon, separated) = match couple_of(&roots) {
        Ok(c) => (Ok(c), None, Some(roots.clone())),
        Err(_) => match resolve_ties(&roots, &claimed) {
            Ok((rc, eps)) => (couple_of(&rc).map_err(|e| e.to_string()), Some(eps), Some(rc)),
            Err(e) => (Err(e.to_string()), None, None),
        },
    };
    let provenance = Provenance::Literature { label: example.label() };
    let witness = separated.and_then(|rc| Witness::for_couple(&claimed, rc, provenance).ok());
    ExampleCheck { example: *example, polynomial, coefficients, epsilon, realized, witness }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteratureReport {
    pub checks: Vec<ExampleCheck>,
}

impl LiteratureReport {
    pub fn all_exact(&self) -> bool {
        self.checks.iter().all(|c| c.exact())
    }

    pub fn all_couples_match(&self) -> bool {
        self.checks.iter().all(|c| c.couple_matches())
    }

    pub fn mismatches(&self) -> Vec<(&ExampleCheck, &CoefficientCheck)> {
        self.checks
            .iter()
            .flat_map(|c| c.coefficients.iter().filter(|k| k.status != CoefficientMatch::Exact).map(move |k| (c, k)))
            .collect()
    }

    pub fn witnesses(&self) -> Vec<Witness> {
        self.checks.iter().filter_map(|c| c.witness.clone()).collect()
    }
}

pub fn verify_examples() -> LiteratureReport {
    LiteratureReport { checks: PUBLISHED_EXAMPLES.iter().map(check_example).collect() }
}

/// Validated witnesses for every published example.
pub fn literature_witnesses() -> Result<Vec<Witness>> {
    PUBLISHED_EXAMPLES
        .iter()
        .map(|e| {
            let roots = e.roots();
            let rc = match couple_of(&roots) {
                Ok(_) => roots,
                Err(_) => resolve_ties(&roots, &e.claimed())?.0,
            };
            Witness::for_couple(&e.claimed(), rc, Provenance::Literature { label: e.label() })
        })
        .collect()
}

impl fmt::Display for LiteratureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let e = &check.example;
            let coeffs = if check.exact() {
                "exact"
            } else if check.digits_agree() {
                "rounded"
            } else {
                "MISMATCH"
            };
            let couple = match &check.realized {
                Ok(c) if check.couple_matches() => format!("couple ok {c}"),
                Ok(c) => format!("couple MISMATCH {c}"),
                Err(e) => format!("couple ERROR {e}"),
            };
            let eps = check.epsilon.as_ref().map(|e| format!(" eps={}", format_exact(e))).unwrap_or_default();
            writeln!(f, "{}\tcoefficients {coeffs}\t{couple}{eps}", e.label())?;
            for k in check.coefficients.iter().filter(|k| k.status != CoefficientMatch::Exact) {
                let tag = if k.status == CoefficientMatch::Rounded { "rounded" } else { "mismatch" };
                writeln!(f, "  x^{}: printed {} exact {} ({tag})", k.power, k.printed, format_exact(&k.exact))?;
            }
        }
        let exact = self.checks.iter().filter(|c| c.exact()).count();
        let agree = self.checks.iter().filter(|c| c.digits_agree()).count();
        let couples = self.checks.iter().filter(|c| c.couple_matches()).count();
        let n = self.checks.len();
        write!(f, "exact {exact}/{n}, printed digits agree {agree}/{n}, couples match {couples}/{n}")
    }
}
