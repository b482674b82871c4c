pub mod braid;
pub mod presentation;
pub mod tl;
pub mod phi;
pub mod verify;
pub mod proof;
