//! The explicit constructions: the pair criterion, the degree-6 twist of a
//! Legendre pair, the auxiliary quartic `C_alpha`, the two rank-2 pair
//! families, the pipeline that derives them from root-permuting maps, and the
//! generator of certified twists from rational points of `C_alpha`.

pub mod aux;
pub mod generate;
pub mod lemmas;
pub mod pair;
pub mod pipeline;

pub use aux::{aux_curve, aux_symbolic_checks, AuxCurve};
pub use generate::{certify_points, generate_twists, recheck_record, GenerateConfig, TwistRecord, TwistStream};
pub use lemmas::{legendre_cubic, legendre_eval, lemma31_pair_criterion, lemma41_construct, PairTwist};
pub use pipeline::{remark52_pipeline, PipelineInput, PipelineReport};
pub use pair::{check_alpha, excluded_alphas, family_theorem51, family_theorem53, FamilyId, IdentityCheck, PairFamily};
