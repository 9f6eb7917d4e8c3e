export {
  ProtocolError,
  PrematureEndError,
  type BatchEvent,
  type CheckpointEvent,
  type EndEvent,
  type PhaseAdvanceEvent,
  type StreamEvent,
} from './events.js'
export { openStream, readAll } from './reader.js'
export {
  asTokenBatches,
  padBatch,
  padSentences,
  stripPadding,
  type PaddedBatch,
  type TokenMatrix,
} from './padding.js'
