//! Small numerical building blocks shared by the physics modules.

pub mod quadrature;
pub mod roots;
pub mod special;
