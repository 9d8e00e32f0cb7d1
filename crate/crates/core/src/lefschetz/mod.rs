//! Lefschetz determinants, decompositions and the degeneration argument.

pub mod decomposition;
pub mod degeneration;
pub mod det;
pub mod fullflag;
pub mod maintheorem;
pub mod parabolic;
pub mod report;
pub mod stembridge;

pub use decomposition::{lefschetz_decomposition, LefschetzDecomposition, LefschetzString, StringShape};
pub use degeneration::{all_orderings, mu_and_mk, r_k_mod_p, Degeneration, LeadingCheck, LemmaReport, MuData};
pub use det::{determinant_at, determinant_mod_p, determinant_over_z, matrix_at, matrix_size, Mode};
pub use fullflag::{
    decide_determinant, find_witness, finite_scan, full_flag_hlp, graph_hlp, table1, FiniteScan, HlpOptions, Table1Row,
    TABLE1_CASES,
};
pub use maintheorem::{assemble_main_theorem, FactorReport, MainTheoremReport};
pub use parabolic::{default_ordering, parabolic_bad_primes, parse_ordering, BadPrimes, IntegerDeterminant};
pub use report::{fingerprint, DetRecord, DetStatus, HlReport, Method, Verdict, Witness};
pub use stembridge::{stembridge_check, stembridge_formula, stembridge_rho, stembridge_symbolic, StembridgeCheck};
