//! Regression suite over the worked examples, with their printed values embedded.

use fockcalc_core::dsl::{parse_poly, parse_symbol};
use fockcalc_core::fock::{
    hyponormality_form, inner_product, quasinormality_defect, toeplitz_adjoint_apply, toeplitz_apply,
};
use fockcalc_core::{AnalyticPoly, FockParams, MixedSymbol, PiScalar};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub quantity: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleResult {
    pub example: String,
    pub symbol: String,
    pub m: u32,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub pass: bool,
    pub examples: Vec<ExampleResult>,
}

enum Value {
    Poly(AnalyticPoly),
    Pi(PiScalar),
}

impl Value {
    fn show(&self) -> String {
        match self {
            Value::Poly(p) => p.to_string(),
            Value::Pi(x) => x.to_string(),
        }
    }
}

struct Builder {
    phi: MixedSymbol,
    params: FockParams,
    checks: Vec<Check>,
}

impl Builder {
    fn new(symbol: &str) -> Self {
        Self {
            phi: parse_symbol(symbol).expect("embedded symbol parses"),
            params: FockParams::new(1),
            checks: Vec::new(),
        }
    }

    fn t(&self, f: &AnalyticPoly) -> AnalyticPoly {
        toeplitz_apply(&self.phi, f, self.params)
    }

    fn ts(&self, f: &AnalyticPoly) -> AnalyticPoly {
        toeplitz_adjoint_apply(&self.phi, f, self.params)
    }

    fn ip(&self, f: &AnalyticPoly, g: &AnalyticPoly) -> PiScalar {
        inner_product(f, g, self.params)
    }

    fn poly(&mut self, quantity: &str, expected: &str, actual: AnalyticPoly) {
        let want = parse_poly(expected).expect("embedded polynomial parses");
        self.push(quantity, Value::Poly(want), Value::Poly(actual));
    }

    fn pi(&mut self, quantity: &str, expected: i64, actual: PiScalar) {
        self.push(quantity, Value::Pi(PiScalar::from_int(expected)), Value::Pi(actual));
    }

    fn push(&mut self, quantity: &str, expected: Value, actual: Value) {
        let pass = match (&expected, &actual) {
            (Value::Poly(a), Value::Poly(b)) => a == b,
            (Value::Pi(a), Value::Pi(b)) => a == b,
            _ => false,
        };
        self.checks.push(Check {
            quantity: quantity.to_string(),
            expected: expected.show(),
            actual: actual.show(),
            pass,
        });
    }

    fn finish(self, example: &str) -> ExampleResult {
        ExampleResult {
            example: example.to_string(),
            symbol: self.phi.to_string(),
            m: 1,
            pass: self.checks.iter().all(|c| c.pass),
            checks: self.checks,
        }
    }
}

fn hyponormality_example(
    name: &str,
    symbol: &str,
    tf: &str,
    tsf: &str,
    norm_tf: i64,
    norm_tsf: i64,
    form: i64,
) -> ExampleResult {
    let mut b = Builder::new(symbol);
    let f = parse_poly("z - z^4").unwrap();
    let t_f = b.t(&f);
    let ts_f = b.ts(&f);
    b.poly("T(z - z^4)", tf, t_f.clone());
    b.poly("T*(z - z^4)", tsf, ts_f.clone());
    let v = b.ip(&b.ts(&t_f), &f);
    b.pi("<T*T f, f>", norm_tf, v);
    let v = b.ip(&b.t(&ts_f), &f);
    b.pi("<TT* f, f>", norm_tsf, v);
    let v = hyponormality_form(&b.phi, &f, b.params);
    b.pi("<[T*,T] f, f>", form, v);
    b.finish(name)
}

fn example_32() -> ExampleResult {
    let mut b = Builder::new("4*z^2*zb^3 + 6*z^3*zb");
    let f = parse_poly("z - z^4").unwrap();
    let t_f = b.t(&f);
    let t2_f = b.t(&t_f);
    let ts_t_f = b.ts(&t_f);
    b.poly("T^2(z - z^4)", "3840*z + 417600*z^2 + 576*z^4 - 60228*z^5 - 2880*z^8", t2_f.clone());
    b.poly("T*T(z - z^4)", "2304 + 303300*z + 1920*z^3 + 49392*z^4 - 17280*z^7", ts_t_f.clone());
    let v = b.ip(&ts_t_f, &b.ts(&f));
    b.pi("<T*T f, T* f>", 0, v);
    let v = b.ip(&t2_f, &t_f);
    b.pi("<T^2 f, T f>", 5529600, v);
    let v = quasinormality_defect(&b.phi, &f, &f, b.params);
    b.pi("<(T*T^2 - TT*T) f, f>", 5529600, v);
    b.finish("3.2")
}

fn example_34() -> ExampleResult {
    let mut b = Builder::new("2*z^3 + 2*z^3*zb + zb^3 + 3*z*zb^3");
    let z = AnalyticPoly::z_pow(1);
    let t_z = b.t(&z);
    let ts_z = b.ts(&z);
    let t2_z = b.t(&t_z);
    let ts_t_z = b.ts(&t_z);
    b.poly("T(z)", "2*z^4 + 10*z^3", t_z.clone());
    b.poly("T*(z)", "z^4 + 15*z^3", ts_z.clone());
    b.poly("T^2(z)", "4*z^7 + 52*z^6 + 140*z^5 + 720*z^2 + 1920*z + 240", t2_z.clone());
    b.poly("T*T(z)", "2*z^7 + 68*z^6 + 210*z^5 + 360*z^2 + 1440*z + 480", ts_t_z.clone());
    let v = b.ip(&b.ts(&t2_z), &z);
    b.pi("<T*T^2 z, z>", 0, v);
    let v = b.ip(&b.t(&ts_t_z), &z);
    b.pi("<TT*T z, z>", 0, v);
    let v = quasinormality_defect(&b.phi, &z, &z, b.params);
    b.pi("<(T*T^2 - TT*T) z, z>", 0, v);
    let v = b.ip(&ts_t_z, &z);
    b.pi("<T*T z, z>", 2880, v);
    let v = b.ip(&b.t(&ts_z), &z);
    b.pi("<TT* z, z>", 5520, v);
    let v = hyponormality_form(&b.phi, &z, b.params);
    b.pi("<[T*,T] z, z>", -2640, v);
    b.finish("3.4")
}

pub fn run_suite() -> SuiteResult {
    let examples = vec![
        hyponormality_example(
            "2.2",
            "z*zb^3 + z^2*zb",
            "-116*z^2 - 7*z^5",
            "6 - 25*z^3 - 8*z^6",
            116016,
            337596,
            -221580,
        ),
        hyponormality_example(
            "2.3",
            "4*z^3*zb + 6*z*zb^4",
            "-2160*z + 20*z^3 - 32*z^6",
            "-480*z^2 + 36*z^4 - 54*z^7",
            14501760,
            119111040,
            -104609280,
        ),
        hyponormality_example(
            "2.4",
            "4*z^3*zb + 6*z^2*zb^3",
            "144 - 1240*z^3 - 32*z^6",
            "-360*z^2 - 336*z^5",
            43293696,
            82753920,
            -39460224,
        ),
        example_32(),
        example_34(),
    ];
    SuiteResult {
        pass: examples.iter().all(|e| e.pass),
        examples,
    }
}

pub fn render_text(suite: &SuiteResult) -> String {
    let mut out = String::new();
    for ex in &suite.examples {
        out.push_str(&format!("Example {}  phi = {}  m = {}\n", ex.example, ex.symbol, ex.m));
        for c in &ex.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{status}] {}\n", c.quantity));
            out.push_str(&format!("         expected {}\n", c.expected));
            if !c.pass {
                out.push_str(&format!("         actual   {}\n", c.actual));
            }
        }
    }
    out.push_str("\nexample  checks  result\n");
    for ex in &suite.examples {
        let passed = ex.checks.iter().filter(|c| c.pass).count();
        let status = if ex.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{:<8} {:>2}/{:<2}   {status}\n",
            ex.example,
            passed,
            ex.checks.len()
        ));
    }
    out.push_str(if suite.pass { "all examples match\n" } else { "some printed values are not reproduced\n" });
    out
}
