# Infrastructure Layer - Adapters & External Services
