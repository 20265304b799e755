pub mod fixtures;
pub mod forms;
pub mod gm;
pub mod io;
pub mod linalg;
pub mod mc;
pub mod slie;
mod util;
