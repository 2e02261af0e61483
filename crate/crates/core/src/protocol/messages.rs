use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::rotframe::ForceBreakdown;
use crate::scenario::Vantage;
use crate::Vec3;

/// Tunable session parameter addressed by `set_param`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Omega,
    MuK,
    MuS,
    Mass,
    Gain,
}

impl Param {
    pub const ALL: [Param; 5] = [
        Param::Omega,
        Param::MuK,
        Param::MuS,
        Param::Mass,
        Param::Gain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Param::Omega => "omega",
            Param::MuK => "mu_k",
            Param::MuS => "mu_s",
            Param::Mass => "mass",
            Param::Gain => "gain",
        }
    }
}

impl FromStr for Param {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Param::ALL.into_iter().find(|p| p.as_str() == s).ok_or(())
    }
}

/// Client → service.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClientMsg {
    /// Pointer or grip position in device coordinates (m); drives the coupling.
    #[serde(rename = "input")]
    DeviceInput {
        device: Vec3,
    },
    /// Direct applied force (N), bypassing the coupling.
    #[serde(rename = "input")]
    ForceInput {
        force: Vec3,
    },
    SetParam {
        name: Param,
        value: f64,
    },
    Vantage {
        frame: Vantage,
    },
    Launch {
        impulse: Vec3,
    },
    Reset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallState {
    pub r_rot: Vec3,
    pub v_rot: Vec3,
    pub r_in: Vec3,
}

/// Snapshot published by the service.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateMsg {
    pub t: f64,
    pub theta: f64,
    pub omega: f64,
    pub ball: BallState,
    pub forces: ForceBreakdown,
    /// Recent positions in the current vantage frame, oldest first.
    pub trace_tail: Vec<Vec3>,
    pub seq: u64,
}

/// Service → client.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ServerMsg {
    State(StateMsg),
    Error { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Not UTF-8, not JSON, or not an object.
    Malformed,
    UnknownType,
    UnknownParam,
    /// Missing or ill-typed field.
    InvalidField,
    /// Well-formed, but the session refused it.
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolError {
    pub kind: ErrorKind,
    pub reason: String,
}

impl ProtocolError {
    pub fn new(kind: ErrorKind, reason: impl Into<String>) -> Self {
        Self {
            kind,
            reason: reason.into(),
        }
    }
}

impl fmt::Display for ProtocolError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reason)
    }
}

impl std::error::Error for ProtocolError {}

pub fn encode(msg: &ClientMsg) -> String {
    serde_json::to_string(msg).expect("client messages always serialize")
}

pub fn encode_server(msg: &ServerMsg) -> String {
    serde_json::to_string(msg).expect("server messages always serialize")
}

/// The `{"type":"error"}` frame for a rejected client message.
pub fn error_reply(err: &ProtocolError) -> String {
    encode_server(&ServerMsg::Error {
        reason: err.reason.clone(),
    })
}

pub fn decode_server(text: &str) -> Result<ServerMsg, ProtocolError> {
    serde_json::from_str(text).map_err(|e| ProtocolError::new(ErrorKind::Malformed, e.to_string()))
}

pub fn decode_bytes(frame: &[u8]) -> Result<ClientMsg, ProtocolError> {
    let text = std::str::from_utf8(frame).map_err(|e| {
        ProtocolError::new(ErrorKind::Malformed, format!("frame is not UTF-8: {e}"))
    })?;
    decode(text)
}

/// Parse one client frame. Unknown extra fields are ignored.
pub fn decode(text: &str) -> Result<ClientMsg, ProtocolError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| ProtocolError::new(ErrorKind::Malformed, format!("invalid JSON: {e}")))?;
    let Value::Object(obj) = value else {
        return Err(ProtocolError::new(
            ErrorKind::Malformed,
            "message must be a JSON object",
        ));
    };
    let kind = match obj.get("type") {
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(field_error("type", "a string")),
        None => {
            return Err(ProtocolError::new(
                ErrorKind::InvalidField,
                "missing field \"type\"",
            ))
        }
    };
    match kind {
        "input" => match (obj.get("device"), obj.get("force")) {
            (Some(_), Some(_)) => Err(ProtocolError::new(
                ErrorKind::InvalidField,
                "input carries either \"device\" or \"force\", not both",
            )),
            (Some(_), None) => Ok(ClientMsg::DeviceInput {
                device: vec3_field(&obj, "device")?,
            }),
            (None, Some(_)) => Ok(ClientMsg::ForceInput {
                force: vec3_field(&obj, "force")?,
            }),
            (None, None) => Err(ProtocolError::new(
                ErrorKind::InvalidField,
                "input needs a \"device\" or \"force\" vector",
            )),
        },
        "set_param" => {
            let name = match obj.get("name") {
                Some(Value::String(s)) => s.parse::<Param>().map_err(|_| {
                    ProtocolError::new(ErrorKind::UnknownParam, format!("unknown parameter {s:?}"))
                })?,
                _ => return Err(field_error("name", "a parameter name")),
            };
            Ok(ClientMsg::SetParam {
                name,
                value: number_field(&obj, "value")?,
            })
        }
        "vantage" => {
            let frame = match obj.get("frame") {
                Some(Value::String(s)) => s
                    .parse::<Vantage>()
                    .map_err(|e| ProtocolError::new(ErrorKind::InvalidField, e))?,
                _ => return Err(field_error("frame", "\"rotating\" or \"inertial\"")),
            };
            Ok(ClientMsg::Vantage { frame })
        }
        "launch" => Ok(ClientMsg::Launch {
            impulse: vec3_field(&obj, "impulse")?,
        }),
        "reset" => Ok(ClientMsg::Reset),
        other => Err(ProtocolError::new(
            ErrorKind::UnknownType,
            format!("unknown message type {other:?}"),
        )),
    }
}

fn field_error(field: &str, expected: &str) -> ProtocolError {
    ProtocolError::new(
        ErrorKind::InvalidField,
        format!("field {field:?} must be {expected}"),
    )
}

fn number_field(obj: &Map<String, Value>, field: &str) -> Result<f64, ProtocolError> {
    obj.get(field)
        .and_then(Value::as_f64)
        .filter(|x| x.is_finite())
        .ok_or_else(|| field_error(field, "a finite number"))
}

fn vec3_field(obj: &Map<String, Value>, field: &str) -> Result<Vec3, ProtocolError> {
    let err = || field_error(field, "an array of 3 finite numbers");
    let Some(Value::Array(items)) = obj.get(field) else {
        return Err(err());
    };
    if items.len() != 3 {
        return Err(err());
    }
    let mut out = [0.0; 3];
    for (slot, item) in out.iter_mut().zip(items) {
        *slot = item.as_f64().filter(|x| x.is_finite()).ok_or_else(err)?;
    }
    Ok(Vec3::from(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_each_type() {
        assert_eq!(
            decode(r#"{"type":"launch","impulse":[0.5,0,0]}"#).unwrap(),
            ClientMsg::Launch {
                impulse: Vec3::new(0.5, 0.0, 0.0)
            }
        );
        assert_eq!(
            decode(r#"{"type":"vantage","frame":"inertial"}"#).unwrap(),
            ClientMsg::Vantage {
                frame: Vantage::Inertial
            }
        );
        assert_eq!(
            decode(r#"{"type":"set_param","name":"omega","value":2}"#).unwrap(),
            ClientMsg::SetParam {
                name: Param::Omega,
                value: 2.0
            }
        );
        assert_eq!(
            decode(r#"{"type":"input","device":[0.01,0,0]}"#).unwrap(),
            ClientMsg::DeviceInput {
                device: Vec3::new(0.01, 0.0, 0.0)
            }
        );
        assert_eq!(
            decode(r#"{"type":"input","force":[1,2,0]}"#).unwrap(),
            ClientMsg::ForceInput {
                force: Vec3::new(1.0, 2.0, 0.0)
            }
        );
        assert_eq!(decode(r#"{"type":"reset"}"#).unwrap(), ClientMsg::Reset);
    }

    #[test]
    fn canonical_encoding() {
        let m = ClientMsg::SetParam {
            name: Param::MuK,
            value: 0.25,
        };
        assert_eq!(
            encode(&m),
            r#"{"type":"set_param","name":"mu_k","value":0.25}"#
        );
        assert_eq!(encode(&ClientMsg::Reset), r#"{"type":"reset"}"#);
        let canon = r#"{"type":"input","device":[0.01,-0.02,0.0]}"#;
        assert_eq!(encode(&decode(canon).unwrap()), canon);
    }

    #[test]
    fn extra_fields_ignored() {
        assert_eq!(
            decode(r#"{"type":"reset","client":"v2","extra":[1,2]}"#).unwrap(),
            ClientMsg::Reset
        );
    }

    #[test]
    fn structured_errors() {
        let kind = |s: &str| decode(s).unwrap_err().kind;
        assert_eq!(
            kind(r#"{"type":"launch","impulse":[0.5,0"#),
            ErrorKind::Malformed
        );
        assert_eq!(kind("[1,2,3]"), ErrorKind::Malformed);
        assert_eq!(kind(r#"{"type":"jump"}"#), ErrorKind::UnknownType);
        assert_eq!(
            kind(r#"{"type":"set_param","name":"gravity","value":1}"#),
            ErrorKind::UnknownParam
        );
        assert_eq!(
            kind(r#"{"type":"launch","impulse":[1,2]}"#),
            ErrorKind::InvalidField
        );
        assert_eq!(
            kind(r#"{"type":"launch","impulse":"x"}"#),
            ErrorKind::InvalidField
        );
        assert_eq!(
            kind(r#"{"type":"set_param","name":"omega"}"#),
            ErrorKind::InvalidField
        );
        assert_eq!(kind(r#"{"type":"input"}"#), ErrorKind::InvalidField);
        assert_eq!(kind(r#"{"type":7}"#), ErrorKind::InvalidField);
        assert_eq!(
            kind(r#"{"type":"vantage","frame":"sideways"}"#),
            ErrorKind::InvalidField
        );
        assert_eq!(
            decode_bytes(&[0xff, 0xfe]).unwrap_err().kind,
            ErrorKind::Malformed
        );
    }

    #[test]
    fn error_reply_shape() {
        let e = ProtocolError::new(ErrorKind::UnknownType, "nope");
        assert_eq!(error_reply(&e), r#"{"type":"error","reason":"nope"}"#);
    }

    #[test]
    fn state_round_trip() {
        let s = ServerMsg::State(StateMsg {
            t: 1.5,
            theta: 0.75,
            omega: 0.5,
            ball: BallState {
                r_rot: Vec3::new(0.1, 0.2, 0.0),
                v_rot: Vec3::new(1.0, 0.0, 0.0),
                r_in: Vec3::new(0.0, 0.3, 0.0),
            },
            forces: ForceBreakdown::default(),
            trace_tail: vec![Vec3::ZERO, Vec3::new(0.1, 0.0, 0.0)],
            seq: 7,
        });
        let text = encode_server(&s);
        assert!(text.starts_with(r#"{"type":"state","t":1.5,"#));
        assert_eq!(decode_server(&text).unwrap(), s);
    }
}
