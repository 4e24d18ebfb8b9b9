use thiserror::Error;

use crate::word::ObjectId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot compose: left word starts at {left_source}, right word ends at {right_target}")]
    CompositionMismatch {
        left_source: ObjectId,
        right_target: ObjectId,
    },
    #[error("generator {0} has no image under the morphism")]
    UnmappedGenerator(usize),
    #[error("morphism image of generator `{label}` does not have the generator's endpoints")]
    NotObjectFixing { label: String },
    #[error("power {exponent} of a non-loop word from {source_obj} to {target}")]
    PowerOfNonLoop {
        source_obj: ObjectId,
        target: ObjectId,
        exponent: i64,
    },
    #[error("relation {index} is not a loop ({source_obj} -> {target})")]
    RelationNotLoop {
        index: usize,
        source_obj: ObjectId,
        target: ObjectId,
    },
    #[error("generator `{label}` has an endpoint outside the object set (size {objects})")]
    DanglingEndpoint { label: String, objects: usize },
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("groupoid presentation is not connected")]
    NotConnected,
    #[error("connector for object {object} is invalid: {reason}")]
    ConnectorInvalid { object: ObjectId, reason: String },
    #[error("generator graph is neither a single cycle nor a set of disjoint loops")]
    UnsupportedShape,
    #[error("presentations do not share an object set ({0} vs {1} objects)")]
    ObjectSetMismatch(usize, usize),
    #[error("intersection groupoid must be totally disconnected and free: {0}")]
    NonFreeIntersection(String),
    #[error("invalid link parameters: {0}")]
    InvalidParams(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` occurs exactly once in no relation")]
    NotEliminable(String),
    #[error("symmetric group degree {degree} exceeds the cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}
