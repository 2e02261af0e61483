//! Text-frame protocol between the live service and its clients.
//!
//! Each frame is one UTF-8 JSON object with a `type` tag. Clients send
//! [`ClientMsg`]; the service answers with [`ServerMsg`]. Decoding never
//! panics: anything that is not a valid message comes back as a
//! [`ProtocolError`], which the service echoes as `{"type":"error"}`.

mod live;
mod messages;

pub use live::{InputMode, LiveSession, TAIL_LEN, TAIL_STRIDE};
pub use messages::{
    decode, decode_bytes, decode_server, encode, encode_server, error_reply, BallState, ClientMsg,
    ErrorKind, Param, ProtocolError, ServerMsg, StateMsg,
};
