/**
 * Event types for the batch-stream protocol: newline-delimited JSON, one
 * record per line. Batch records carry sample ids plus per-sample token
 * arrays; control records are marked by an `event` key.
 */

export interface BatchEvent {
  kind: 'batch'
  batchId: number
  phase: number
  shard: number
  sampleIds: number[]
  src: string[][]
  tgt: string[][]
  wordCount: number
}

export interface CheckpointEvent {
  kind: 'checkpoint'
  checkpoint: number
  batches: number
}

export interface PhaseAdvanceEvent {
  kind: 'phase_advance'
  phase: number
}

export interface EndEvent {
  kind: 'end'
  totalBatches: number
}

export type StreamEvent = BatchEvent | CheckpointEvent | PhaseAdvanceEvent | EndEvent

/** A stream line that is not valid protocol; `line` is 1-based. */
export class ProtocolError extends Error {
  constructor(
    readonly line: number,
    readonly reason: string,
  ) {
    super(`protocol error at line ${line}: ${reason}`)
    this.name = 'ProtocolError'
  }
}

/** The stream ended without an `end` control record. */
export class PrematureEndError extends Error {
  constructor(readonly lastLine: number) {
    super(`stream ended without an end record (after line ${lastLine})`)
    this.name = 'PrematureEndError'
  }
}
