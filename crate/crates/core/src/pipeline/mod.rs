//! End-to-end runs: certificates, fibre scans and the Neumann–Setzer survey.

pub mod certificate;
pub mod scan;
pub mod survey;

pub use certificate::{independent_rank_check, prove_rank_zero, Justification, RankCertificate, RankConfirmation, Step};
pub use scan::{fibre_record, scan_legendre_fibres, scan_parameters, Classification, FibreRecord, ScanParams, ScanStatistics};
pub use survey::{neumann_setzer_survey, survey_parameters, survey_record, SurveyRecord};
